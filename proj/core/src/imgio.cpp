#include "sl0mca/imgio.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "sl0mca/errors.hpp"

namespace sl0mca {
namespace {

struct PgmRaster {
  std::size_t width = 0;
  std::size_t height = 0;
  std::string_view pixels;
};

class HeaderReader {
 public:
  explicit HeaderReader(std::string_view bytes) : bytes_(bytes) {}

  std::size_t read_number(const char* what) {
    skip_space_and_comments();
    const std::size_t start = pos_;
    std::size_t value = 0;
    while (pos_ < bytes_.size() && std::isdigit(static_cast<unsigned char>(bytes_[pos_]))) {
      value = value * 10 + static_cast<std::size_t>(bytes_[pos_] - '0');
      if (value > (std::size_t{1} << 31)) throw ParseError(std::string("PGM: ") + what + " too large", start);
      ++pos_;
    }
    if (pos_ == start) throw ParseError(std::string("PGM: expected ") + what, start);
    return value;
  }

  // Exactly one whitespace byte separates maxval from the raster.
  void expect_single_space() {
    if (pos_ >= bytes_.size() || !std::isspace(static_cast<unsigned char>(bytes_[pos_]))) {
      throw ParseError("PGM: expected whitespace after maxval", pos_);
    }
    ++pos_;
  }

  std::size_t pos() const noexcept { return pos_; }

 private:
  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      const char ch = bytes_[pos_];
      if (ch == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(ch))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  std::string_view bytes_;
  std::size_t pos_ = 2;
};

PgmRaster parse_pgm(std::string_view bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P') throw ParseError("PGM: bad magic number", 0);
  if (bytes[1] != '5') {
    if (bytes[1] >= '1' && bytes[1] <= '7') {
      throw UnsupportedFormatError(std::string("unsupported netpbm variant P") + bytes[1] +
                                   "; only binary PGM (P5) is supported");
    }
    throw ParseError("PGM: bad magic number", 0);
  }
  HeaderReader reader(bytes);
  PgmRaster r;
  r.width = reader.read_number("width");
  r.height = reader.read_number("height");
  const std::size_t maxval_at = reader.pos();
  const std::size_t maxval = reader.read_number("maxval");
  if (maxval != 255) {
    throw UnsupportedFormatError("PGM maxval " + std::to_string(maxval) + " at byte offset " +
                                 std::to_string(maxval_at) + " unsupported; only 8-bit (255) is accepted");
  }
  reader.expect_single_space();
  if (r.width == 0 || r.height == 0) throw ParseError("PGM: zero image dimension", reader.pos());
  const std::size_t need = r.width * r.height;
  const std::size_t have = bytes.size() - reader.pos();
  if (have < need) throw ParseError("PGM: truncated raster", bytes.size());
  if (have > need) throw ParseError("PGM: trailing bytes after raster", reader.pos() + need);
  r.pixels = bytes.substr(reader.pos(), need);
  return r;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open file: " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void dump(const std::filesystem::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed: " + path.string());
}

std::string pgm_header(std::size_t width, std::size_t height) {
  return "P5\n" + std::to_string(width) + " " + std::to_string(height) + "\n255\n";
}

}  // namespace

ImageGrid decode_pgm(std::string_view bytes) {
  const PgmRaster r = parse_pgm(bytes);
  ImageGrid img(r.height, r.width);
  for (std::size_t i = 0; i < r.pixels.size(); ++i) {
    img.vector()[static_cast<Eigen::Index>(i)] = static_cast<unsigned char>(r.pixels[i]) / 255.0;
  }
  return img;
}

std::uint8_t quantize_pixel(double v) {
  if (!(v > 0.0)) return 0;  // also maps NaN to 0
  if (v >= 1.0) return 255;
  return static_cast<std::uint8_t>(std::round(v * 255.0));
}

std::string encode_pgm(const ImageGrid& img) {
  if (img.empty()) throw DimensionError("encode_pgm: empty image");
  std::string out = pgm_header(img.width(), img.height());
  out.reserve(out.size() + img.size());
  for (const double v : img.vector()) out.push_back(static_cast<char>(quantize_pixel(v)));
  return out;
}

ImageGrid read_image(const std::filesystem::path& path) { return decode_pgm(slurp(path)); }

void write_image(const ImageGrid& img, const std::filesystem::path& path) { dump(path, encode_pgm(img)); }

MaskGrid decode_mask(std::string_view bytes) {
  const PgmRaster r = parse_pgm(bytes);
  MaskGrid mask(r.height, r.width);
  for (std::size_t i = 0; i < r.pixels.size(); ++i) {
    const auto v = static_cast<unsigned char>(r.pixels[i]);
    if (v != 0 && v != 255) {
      throw ValidationError("mask pixel " + std::to_string(i) + " has gray value " + std::to_string(v) +
                            "; masks must contain only 0 (missing) and 255 (known)");
    }
    mask.set(i, v == 255);
  }
  return mask;
}

MaskGrid read_mask(const std::filesystem::path& path) { return decode_mask(slurp(path)); }

void write_mask(const MaskGrid& mask, const std::filesystem::path& path) {
  std::string out = pgm_header(mask.width(), mask.height());
  for (std::size_t i = 0; i < mask.size(); ++i) out.push_back(static_cast<char>(mask.known(i) ? 255 : 0));
  dump(path, out);
}

double psnr(const ImageGrid& a, const ImageGrid& b, const std::optional<MaskGrid>& missing_of) {
  if (!a.same_shape(b)) throw DimensionError("psnr: image shapes differ");
  if (missing_of && !missing_of->matches(a)) throw DimensionError("psnr: mask shape differs");
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (missing_of && missing_of->known(i)) continue;
    const double d = a.vector()[static_cast<Eigen::Index>(i)] - b.vector()[static_cast<Eigen::Index>(i)];
    sum += d * d;
    ++count;
  }
  if (count == 0) throw DimensionError("psnr: comparison region is empty");
  const double mse = sum / static_cast<double>(count);
  if (mse == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(1.0 / mse);
}

}  // namespace sl0mca
