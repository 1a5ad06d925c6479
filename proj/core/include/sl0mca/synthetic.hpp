#pragma once

#include <cstddef>
#include <cstdint>

#include "sl0mca/image.hpp"

namespace sl0mca {

// Cartoon + texture test image. The cartoon layer is a tilted half-plane step
// (0 below the edge, `step_amplitude` above it); the texture layer is one
// block-DCT atom repeated in every block, scaled to peak `texture_amplitude`.
struct SyntheticScene {
  ImageGrid image;
  ImageGrid cartoon;
  ImageGrid texture;
};

struct SceneOptions {
  std::size_t size = 64;
  std::size_t block = 32;
  std::size_t freq_row = 5;
  std::size_t freq_col = 3;
  double step_amplitude = 1.0;
  double texture_amplitude = 0.3;
};

SyntheticScene make_cartoon_texture_scene(const SceneOptions& options = {});

// Half-plane step alone (the cartoon layer of the scene above).
ImageGrid make_half_plane(std::size_t height, std::size_t width, double amplitude = 1.0);

// Every block carries the DCT atom (freq_row, freq_col) with peak `amplitude`.
ImageGrid make_block_cosine(std::size_t height, std::size_t width, std::size_t block, std::size_t freq_row,
                            std::size_t freq_col, double amplitude);

// Each pixel is missing independently with probability `missing_fraction`.
// Deterministic for a given seed on every platform.
MaskGrid make_random_mask(std::size_t height, std::size_t width, double missing_fraction, std::uint64_t seed);

}  // namespace sl0mca
