#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "sl0mca/image.hpp"

namespace sl0mca {

// Binary PGM (P5), maxval 255. Pixels load as v / 255 exactly. Header
// comments ('#') are accepted on input; output is always
// "P5\n<width> <height>\n255\n" followed by width*height bytes.
ImageGrid decode_pgm(std::string_view bytes);
std::string encode_pgm(const ImageGrid& img);

ImageGrid read_image(const std::filesystem::path& path);
void write_image(const ImageGrid& img, const std::filesystem::path& path);

// Clamps to [0,1] and rounds half away from zero.
std::uint8_t quantize_pixel(double v);

// 255 -> known, 0 -> missing; any other value throws ValidationError.
MaskGrid decode_mask(std::string_view bytes);
MaskGrid read_mask(const std::filesystem::path& path);
void write_mask(const MaskGrid& mask, const std::filesystem::path& path);

// 10 log10(1 / MSE) with peak 1.0. With `missing_of` set, only pixels the mask
// marks as missing are compared. Identical inputs give +infinity.
double psnr(const ImageGrid& a, const ImageGrid& b, const std::optional<MaskGrid>& missing_of = std::nullopt);

}  // namespace sl0mca
