#pragma once

#include <array>
#include <cstddef>

#include <Eigen/Core>

#include "sl0mca/image.hpp"
#include "sl0mca/operators.hpp"

namespace sl0mca {

inline constexpr std::size_t kDefaultDctBlock = 32;
inline constexpr int kDefaultWaveletLevels = 6;

// --- Local DCT -------------------------------------------------------------
//
// Non-overlapping blocks of size block x block, each transformed by the
// orthonormal 2-D DCT-II. Coefficients are laid out block by block in
// row-major block order; inside a block, frequencies are row-major
// (vertical frequency major). Both image dimensions must be multiples of block.

Eigen::VectorXd block_dct_analyze(const ImageGrid& img, std::size_t block);
ImageGrid block_dct_synthesize(const Eigen::VectorXd& coeffs, std::size_t block, std::size_t height,
                               std::size_t width);

class BlockDctDictionary final : public DictionaryOperator {
 public:
  BlockDctDictionary(std::size_t height, std::size_t width, std::size_t block = kDefaultDctBlock);

  Eigen::Index n_pixels() const noexcept override { return static_cast<Eigen::Index>(height_ * width_); }
  Eigen::Index n_coeffs() const noexcept override { return n_pixels(); }
  Backend backend() const noexcept override { return Backend::block_dct; }
  bool is_tight_frame() const noexcept override { return true; }
  Eigen::MatrixXd gram() const override;

  std::size_t block() const noexcept { return block_; }

 protected:
  Eigen::VectorXd apply_forward(const Eigen::VectorXd& coeffs) const override;
  Eigen::VectorXd apply_adjoint(const Eigen::VectorXd& image) const override;

 private:
  std::size_t height_;
  std::size_t width_;
  std::size_t block_;
  Eigen::MatrixXd basis_;
};

// --- Multiscale wavelet ----------------------------------------------------
//
// Separable, critically sampled, periodized Daubechies-4 wavelet transform.
// The four scaling taps are
//   h = ((1+sqrt3), (3+sqrt3), (3-sqrt3), (1-sqrt3)) / (4 sqrt2)
// and the wavelet taps are g_j = (-1)^j h_{3-j}. The filter bank is
// orthonormal, so analysis/synthesis is a Parseval frame (in fact a basis).
// Coefficients use the in-place Mallat layout of an H x W array flattened
// row-major: the coarse approximation sits in the top-left
// (H >> levels) x (W >> levels) corner.

std::array<double, 4> daubechies4_lowpass();
std::array<double, 4> daubechies4_highpass();

Eigen::VectorXd multiscale_analyze(const ImageGrid& img, int levels);
ImageGrid multiscale_synthesize(const Eigen::VectorXd& coeffs, int levels, std::size_t height,
                                std::size_t width);

class MultiscaleDictionary final : public DictionaryOperator {
 public:
  MultiscaleDictionary(std::size_t height, std::size_t width, int levels = kDefaultWaveletLevels);

  Eigen::Index n_pixels() const noexcept override { return static_cast<Eigen::Index>(height_ * width_); }
  Eigen::Index n_coeffs() const noexcept override { return n_pixels(); }
  Backend backend() const noexcept override { return Backend::multiscale_wavelet; }
  bool is_tight_frame() const noexcept override { return true; }
  Eigen::MatrixXd gram() const override;

  int levels() const noexcept { return levels_; }

 protected:
  Eigen::VectorXd apply_forward(const Eigen::VectorXd& coeffs) const override;
  Eigen::VectorXd apply_adjoint(const Eigen::VectorXd& image) const override;

 private:
  std::size_t height_;
  std::size_t width_;
  int levels_;
};

}  // namespace sl0mca
