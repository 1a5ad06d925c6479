#include "sl0mca/coeff_io.hpp"

#include <bit>
#include <fstream>
#include <limits>
#include <sstream>

#include "sl0mca/errors.hpp"

namespace sl0mca {
namespace {

constexpr std::string_view kMagic = "SPCF";
constexpr std::size_t kHeaderBytes = 16;

template <typename UInt>
void put_le(std::string& out, UInt v) {
  for (std::size_t i = 0; i < sizeof(UInt); ++i) {
    out.push_back(static_cast<char>((v >> (8 * i)) & 0xFFu));
  }
}

template <typename UInt>
UInt get_le(std::string_view bytes, std::size_t at) {
  UInt v = 0;
  for (std::size_t i = 0; i < sizeof(UInt); ++i) {
    v |= static_cast<UInt>(static_cast<unsigned char>(bytes[at + i])) << (8 * i);
  }
  return v;
}

}  // namespace

std::string encode_coefficients(const Eigen::VectorXd& coeffs) {
  if (static_cast<std::uint64_t>(coeffs.size()) > std::numeric_limits<std::uint32_t>::max()) {
    throw DimensionError("coefficient vector too long for the SPCF format");
  }
  std::string out;
  out.reserve(kHeaderBytes + 8 * static_cast<std::size_t>(coeffs.size()));
  out.append(kMagic);
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(coeffs.size()));
  put_le<std::uint32_t>(out, 0);
  put_le<std::uint32_t>(out, 0);
  for (const double v : coeffs) put_le<std::uint64_t>(out, std::bit_cast<std::uint64_t>(v));
  return out;
}

Eigen::VectorXd decode_coefficients(std::string_view bytes) {
  if (bytes.size() < kMagic.size() || bytes.substr(0, kMagic.size()) != kMagic) {
    throw ParseError("coefficient file: bad magic, expected \"SPCF\"", 0);
  }
  if (bytes.size() < kHeaderBytes) throw ParseError("coefficient file: truncated header", bytes.size());
  const auto length = get_le<std::uint32_t>(bytes, 4);
  const std::size_t expected = kHeaderBytes + 8 * static_cast<std::size_t>(length);
  if (bytes.size() < expected) throw ParseError("coefficient file: truncated payload", bytes.size());
  if (bytes.size() > expected) throw ParseError("coefficient file: trailing bytes", expected);
  Eigen::VectorXd out(static_cast<Eigen::Index>(length));
  for (std::uint32_t i = 0; i < length; ++i) {
    out[i] = std::bit_cast<double>(get_le<std::uint64_t>(bytes, kHeaderBytes + 8 * std::size_t{i}));
  }
  return out;
}

void write_coefficients(const std::filesystem::path& path, const Eigen::VectorXd& coeffs) {
  const std::string bytes = encode_coefficients(coeffs);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed: " + path.string());
}

Eigen::VectorXd read_coefficients(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open coefficient file: " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return decode_coefficients(ss.str());
}

}  // namespace sl0mca
