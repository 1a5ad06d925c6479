#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include <Eigen/Core>

namespace sl0mca {

// 2-D grayscale raster stored row-major as a dense vector. Values are nominally
// in [0,1]; intermediate layers may leave that range.
class ImageGrid {
 public:
  ImageGrid() = default;
  ImageGrid(std::size_t height, std::size_t width, double fill = 0.0);
  ImageGrid(std::size_t height, std::size_t width, Eigen::VectorXd pixels);

  std::size_t height() const noexcept { return height_; }
  std::size_t width() const noexcept { return width_; }
  std::size_t size() const noexcept { return height_ * width_; }
  bool empty() const noexcept { return size() == 0; }

  double& operator()(std::size_t row, std::size_t col) { return pixels_[index(row, col)]; }
  double operator()(std::size_t row, std::size_t col) const { return pixels_[index(row, col)]; }

  const Eigen::VectorXd& vector() const noexcept { return pixels_; }
  Eigen::VectorXd& vector() noexcept { return pixels_; }

  bool same_shape(const ImageGrid& other) const noexcept {
    return height_ == other.height_ && width_ == other.width_;
  }

 private:
  Eigen::Index index(std::size_t row, std::size_t col) const noexcept {
    return static_cast<Eigen::Index>(row * width_ + col);
  }

  std::size_t height_ = 0;
  std::size_t width_ = 0;
  Eigen::VectorXd pixels_;
};

// Observation mask: 1 = pixel known, 0 = pixel missing.
class MaskGrid {
 public:
  MaskGrid() = default;
  MaskGrid(std::size_t height, std::size_t width, bool known = true);

  std::size_t height() const noexcept { return height_; }
  std::size_t width() const noexcept { return width_; }
  std::size_t size() const noexcept { return bits_.size(); }

  bool known(std::size_t row, std::size_t col) const { return bits_[row * width_ + col] != 0; }
  bool known(std::size_t i) const { return bits_[i] != 0; }
  void set(std::size_t row, std::size_t col, bool known) { bits_[row * width_ + col] = known ? 1 : 0; }
  void set(std::size_t i, bool known) { bits_[i] = known ? 1 : 0; }

  std::size_t known_count() const noexcept;

  // 0/1 weights suitable for pixelwise products.
  Eigen::VectorXd weights() const;

  bool matches(const ImageGrid& img) const noexcept {
    return height_ == img.height() && width_ == img.width();
  }

 private:
  std::size_t height_ = 0;
  std::size_t width_ = 0;
  std::vector<std::uint8_t> bits_;
};

// Missing pixels replaced by zero.
ImageGrid zero_fill(const ImageGrid& img, const MaskGrid& mask);

}  // namespace sl0mca
