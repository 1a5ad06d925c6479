#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include <Eigen/Core>

namespace sl0mca {

// Flat coefficient dump: 16-byte header ("SPCF", u32 length, two u32 reserved
// words = 0, the second padding the payload to 8-byte alignment) followed by
// `length` IEEE-754 binary64 values. All fields little-endian.
std::string encode_coefficients(const Eigen::VectorXd& coeffs);
Eigen::VectorXd decode_coefficients(std::string_view bytes);

void write_coefficients(const std::filesystem::path& path, const Eigen::VectorXd& coeffs);
Eigen::VectorXd read_coefficients(const std::filesystem::path& path);

}  // namespace sl0mca
