#pragma once

#include "sl0mca/image.hpp"

namespace sl0mca {

// Forward differences; the last column of gx and last row of gy are zero
// (Neumann boundary).
struct GradientField {
  ImageGrid gx;
  ImageGrid gy;
};

GradientField gradient(const ImageGrid& img);

// Backward-difference divergence, the negative adjoint of gradient():
// <gradient(u), p> == -<u, divergence(p)> for every field p.
ImageGrid divergence(const GradientField& field);

// sum over pixels of sqrt(gx^2 + gy^2 + eps^2). eps = 0 gives isotropic TV.
double tv_value(const ImageGrid& img, double eps);

// Gradient of tv_value(., eps) with respect to the pixels:
// -divergence(gx / rho, gy / rho), rho = sqrt(gx^2 + gy^2 + eps^2). eps > 0.
ImageGrid tv_gradient(const ImageGrid& img, double eps);

// img - mu * tv_gradient(img, eps). No clamping.
ImageGrid tv_correction_step(const ImageGrid& img, double mu, double eps);

}  // namespace sl0mca
