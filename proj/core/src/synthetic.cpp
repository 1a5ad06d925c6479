#include "sl0mca/synthetic.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "sl0mca/errors.hpp"

namespace sl0mca {

ImageGrid make_half_plane(std::size_t height, std::size_t width, double amplitude) {
  ImageGrid img(height, width);
  for (std::size_t r = 0; r < height; ++r) {
    for (std::size_t c = 0; c < width; ++c) {
      const double x = static_cast<double>(c) + 0.5 * static_cast<double>(r);
      img(r, c) = x > 0.6 * static_cast<double>(width) ? amplitude : 0.0;
    }
  }
  return img;
}

ImageGrid make_block_cosine(std::size_t height, std::size_t width, std::size_t block, std::size_t freq_row,
                            std::size_t freq_col, double amplitude) {
  if (block == 0 || height % block != 0 || width % block != 0) {
    throw DimensionError("make_block_cosine: dimensions must be divisible by block");
  }
  const double b = static_cast<double>(block);
  ImageGrid img(height, width);
  for (std::size_t r = 0; r < height; ++r) {
    const double cr = std::cos(std::numbers::pi * static_cast<double>(2 * (r % block) + 1) *
                               static_cast<double>(freq_row) / (2.0 * b));
    for (std::size_t c = 0; c < width; ++c) {
      const double cc = std::cos(std::numbers::pi * static_cast<double>(2 * (c % block) + 1) *
                                 static_cast<double>(freq_col) / (2.0 * b));
      img(r, c) = amplitude * cr * cc;
    }
  }
  return img;
}

SyntheticScene make_cartoon_texture_scene(const SceneOptions& o) {
  SyntheticScene scene;
  scene.cartoon = make_half_plane(o.size, o.size, o.step_amplitude);
  scene.texture = make_block_cosine(o.size, o.size, o.block, o.freq_row, o.freq_col, o.texture_amplitude);
  scene.image = ImageGrid(o.size, o.size, scene.cartoon.vector() + scene.texture.vector());
  return scene;
}

MaskGrid make_random_mask(std::size_t height, std::size_t width, double missing_fraction, std::uint64_t seed) {
  if (!(missing_fraction >= 0.0 && missing_fraction <= 1.0)) {
    throw ParameterError("missing fraction must lie in [0,1]");
  }
  // mt19937_64 output is fully specified by the standard; distributions are not,
  // so the uniform variate is formed by hand.
  std::mt19937_64 rng(seed);
  MaskGrid mask(height, width);
  for (std::size_t i = 0; i < height * width; ++i) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    mask.set(i, u >= missing_fraction);
  }
  return mask;
}

}  // namespace sl0mca
