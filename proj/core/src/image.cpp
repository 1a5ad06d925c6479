#include "sl0mca/image.hpp"

#include <algorithm>
#include <utility>

#include "sl0mca/errors.hpp"

namespace sl0mca {

ImageGrid::ImageGrid(std::size_t height, std::size_t width, double fill)
    : height_(height),
      width_(width),
      pixels_(Eigen::VectorXd::Constant(static_cast<Eigen::Index>(height * width), fill)) {}

ImageGrid::ImageGrid(std::size_t height, std::size_t width, Eigen::VectorXd pixels)
    : height_(height), width_(width), pixels_(std::move(pixels)) {
  if (static_cast<std::size_t>(pixels_.size()) != height * width) {
    throw DimensionError("ImageGrid: pixel vector length does not match height*width");
  }
}

MaskGrid::MaskGrid(std::size_t height, std::size_t width, bool known)
    : height_(height), width_(width), bits_(height * width, known ? 1 : 0) {}

std::size_t MaskGrid::known_count() const noexcept {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

Eigen::VectorXd MaskGrid::weights() const {
  Eigen::VectorXd w(static_cast<Eigen::Index>(bits_.size()));
  for (std::size_t i = 0; i < bits_.size(); ++i) w[static_cast<Eigen::Index>(i)] = bits_[i];
  return w;
}

ImageGrid zero_fill(const ImageGrid& img, const MaskGrid& mask) {
  if (!mask.matches(img)) throw DimensionError("zero_fill: mask shape differs from image shape");
  return ImageGrid(img.height(), img.width(), img.vector().cwiseProduct(mask.weights()));
}

}  // namespace sl0mca
