#include "sl0mca/transforms.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "sl0mca/errors.hpp"

namespace sl0mca {
namespace {

void check_block_shape(std::size_t height, std::size_t width, std::size_t block) {
  if (block == 0) throw DimensionError("block DCT: block size must be positive");
  if (height == 0 || width == 0 || height % block != 0 || width % block != 0) {
    throw DimensionError("block DCT: image dimensions " + std::to_string(height) + "x" +
                         std::to_string(width) + " must be divisible by block size " +
                         std::to_string(block));
  }
}

void check_wavelet_shape(std::size_t height, std::size_t width, int levels) {
  if (levels < 1 || levels > 30) throw DimensionError("wavelet: levels must be in [1, 30]");
  const std::size_t step = std::size_t{1} << levels;
  if (height == 0 || width == 0 || height % step != 0 || width % step != 0) {
    throw DimensionError("wavelet: image dimensions " + std::to_string(height) + "x" +
                         std::to_string(width) + " must be divisible by 2^levels = " +
                         std::to_string(step));
  }
}

// Orthonormal DCT-II basis, row k = frequency k.
Eigen::MatrixXd dct_matrix(std::size_t n) {
  const auto size = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd c(size, size);
  const double dc = std::sqrt(1.0 / static_cast<double>(n));
  const double ac = std::sqrt(2.0 / static_cast<double>(n));
  for (Eigen::Index k = 0; k < size; ++k) {
    for (Eigen::Index i = 0; i < size; ++i) {
      c(k, i) = (k == 0 ? dc : ac) *
                std::cos(std::numbers::pi * static_cast<double>((2 * i + 1) * k) / (2.0 * static_cast<double>(n)));
    }
  }
  return c;
}

using RowMajorMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Image -> coefficients (analyze) computes C * X * C^T per tile;
// coefficients -> image (synthesize) computes C^T * Y * C.
Eigen::VectorXd blockwise_dct(const Eigen::VectorXd& in, const Eigen::MatrixXd& c, std::size_t height,
                              std::size_t width, bool synthesize) {
  const Eigen::Index b = c.rows();
  const auto h = static_cast<Eigen::Index>(height);
  const auto w = static_cast<Eigen::Index>(width);
  Eigen::VectorXd out(in.size());
  Eigen::Map<const RowMajorMatrix> image_in(in.data(), h, w);
  Eigen::Map<RowMajorMatrix> image_out(out.data(), h, w);
  Eigen::Index offset = 0;
  for (Eigen::Index br = 0; br < h; br += b) {
    for (Eigen::Index bc = 0; bc < w; bc += b) {
      if (synthesize) {
        Eigen::Map<const RowMajorMatrix> tile(in.data() + offset, b, b);
        image_out.block(br, bc, b, b).noalias() = c.transpose() * tile * c;
      } else {
        Eigen::Map<RowMajorMatrix> tile(out.data() + offset, b, b);
        tile.noalias() = c * image_in.block(br, bc, b, b) * c.transpose();
      }
      offset += b * b;
    }
  }
  return out;
}

constexpr std::array<double, 4> kLowpass = [] {
  constexpr double s3 = 1.7320508075688772935;
  constexpr double norm = 4.0 * 1.4142135623730950488;
  return std::array<double, 4>{(1.0 + s3) / norm, (3.0 + s3) / norm, (3.0 - s3) / norm,
                               (1.0 - s3) / norm};
}();
constexpr std::array<double, 4> kHighpass{kLowpass[3], -kLowpass[2], kLowpass[1], -kLowpass[0]};

// One analysis stage on a strided sequence of length n (even), periodic.
void analyze_1d(double* data, std::size_t n, std::size_t stride, std::vector<double>& scratch) {
  scratch.assign(n, 0.0);
  const std::size_t half = n / 2;
  for (std::size_t i = 0; i < half; ++i) {
    double lo = 0.0;
    double hi = 0.0;
    for (std::size_t j = 0; j < 4; ++j) {
      const double v = data[((2 * i + j) % n) * stride];
      lo += kLowpass[j] * v;
      hi += kHighpass[j] * v;
    }
    scratch[i] = lo;
    scratch[half + i] = hi;
  }
  for (std::size_t i = 0; i < n; ++i) data[i * stride] = scratch[i];
}

void synthesize_1d(double* data, std::size_t n, std::size_t stride, std::vector<double>& scratch) {
  scratch.assign(n, 0.0);
  const std::size_t half = n / 2;
  for (std::size_t i = 0; i < half; ++i) {
    const double lo = data[i * stride];
    const double hi = data[(half + i) * stride];
    for (std::size_t j = 0; j < 4; ++j) {
      scratch[(2 * i + j) % n] += kLowpass[j] * lo + kHighpass[j] * hi;
    }
  }
  for (std::size_t i = 0; i < n; ++i) data[i * stride] = scratch[i];
}

void wavelet_forward_inplace(Eigen::VectorXd& a, std::size_t height, std::size_t width, int levels) {
  std::vector<double> scratch;
  double* base = a.data();
  for (int level = 0; level < levels; ++level) {
    const std::size_t h = height >> level;
    const std::size_t w = width >> level;
    for (std::size_t r = 0; r < h; ++r) analyze_1d(base + r * width, w, 1, scratch);
    for (std::size_t c = 0; c < w; ++c) analyze_1d(base + c, h, width, scratch);
  }
}

void wavelet_inverse_inplace(Eigen::VectorXd& a, std::size_t height, std::size_t width, int levels) {
  std::vector<double> scratch;
  double* base = a.data();
  for (int level = levels - 1; level >= 0; --level) {
    const std::size_t h = height >> level;
    const std::size_t w = width >> level;
    for (std::size_t c = 0; c < w; ++c) synthesize_1d(base + c, h, width, scratch);
    for (std::size_t r = 0; r < h; ++r) synthesize_1d(base + r * width, w, 1, scratch);
  }
}

}  // namespace

Eigen::VectorXd block_dct_analyze(const ImageGrid& img, std::size_t block) {
  check_block_shape(img.height(), img.width(), block);
  return blockwise_dct(img.vector(), dct_matrix(block), img.height(), img.width(), false);
}

ImageGrid block_dct_synthesize(const Eigen::VectorXd& coeffs, std::size_t block, std::size_t height,
                               std::size_t width) {
  check_block_shape(height, width, block);
  if (static_cast<std::size_t>(coeffs.size()) != height * width) {
    throw DimensionError("block_dct_synthesize: coefficient length must equal height*width");
  }
  return ImageGrid(height, width, blockwise_dct(coeffs, dct_matrix(block), height, width, true));
}

BlockDctDictionary::BlockDctDictionary(std::size_t height, std::size_t width, std::size_t block)
    : height_(height), width_(width), block_(block) {
  check_block_shape(height, width, block);
  basis_ = dct_matrix(block);
}

Eigen::MatrixXd BlockDctDictionary::gram() const { return Eigen::MatrixXd::Identity(n_pixels(), n_pixels()); }

Eigen::VectorXd BlockDctDictionary::apply_forward(const Eigen::VectorXd& coeffs) const {
  return blockwise_dct(coeffs, basis_, height_, width_, true);
}

Eigen::VectorXd BlockDctDictionary::apply_adjoint(const Eigen::VectorXd& image) const {
  return blockwise_dct(image, basis_, height_, width_, false);
}

std::array<double, 4> daubechies4_lowpass() { return kLowpass; }
std::array<double, 4> daubechies4_highpass() { return kHighpass; }

Eigen::VectorXd multiscale_analyze(const ImageGrid& img, int levels) {
  check_wavelet_shape(img.height(), img.width(), levels);
  Eigen::VectorXd a = img.vector();
  wavelet_forward_inplace(a, img.height(), img.width(), levels);
  return a;
}

ImageGrid multiscale_synthesize(const Eigen::VectorXd& coeffs, int levels, std::size_t height,
                                std::size_t width) {
  check_wavelet_shape(height, width, levels);
  if (static_cast<std::size_t>(coeffs.size()) != height * width) {
    throw DimensionError("multiscale_synthesize: coefficient length must equal height*width");
  }
  Eigen::VectorXd a = coeffs;
  wavelet_inverse_inplace(a, height, width, levels);
  return ImageGrid(height, width, std::move(a));
}

MultiscaleDictionary::MultiscaleDictionary(std::size_t height, std::size_t width, int levels)
    : height_(height), width_(width), levels_(levels) {
  check_wavelet_shape(height, width, levels);
}

Eigen::MatrixXd MultiscaleDictionary::gram() const {
  return Eigen::MatrixXd::Identity(n_pixels(), n_pixels());
}

Eigen::VectorXd MultiscaleDictionary::apply_forward(const Eigen::VectorXd& coeffs) const {
  Eigen::VectorXd a = coeffs;
  wavelet_inverse_inplace(a, height_, width_, levels_);
  return a;
}

Eigen::VectorXd MultiscaleDictionary::apply_adjoint(const Eigen::VectorXd& image) const {
  Eigen::VectorXd a = image;
  wavelet_forward_inplace(a, height_, width_, levels_);
  return a;
}

}  // namespace sl0mca
