#include "sl0mca/tv.hpp"

#include <cmath>

#include "sl0mca/errors.hpp"

namespace sl0mca {

GradientField gradient(const ImageGrid& img) {
  if (img.empty()) throw DimensionError("gradient: empty image");
  const std::size_t h = img.height();
  const std::size_t w = img.width();
  GradientField g{ImageGrid(h, w), ImageGrid(h, w)};
  for (std::size_t r = 0; r < h; ++r) {
    for (std::size_t c = 0; c < w; ++c) {
      if (c + 1 < w) g.gx(r, c) = img(r, c + 1) - img(r, c);
      if (r + 1 < h) g.gy(r, c) = img(r + 1, c) - img(r, c);
    }
  }
  return g;
}

ImageGrid divergence(const GradientField& field) {
  const ImageGrid& px = field.gx;
  const ImageGrid& py = field.gy;
  if (px.empty() || !px.same_shape(py)) throw DimensionError("divergence: bad field shape");
  const std::size_t h = px.height();
  const std::size_t w = px.width();
  ImageGrid d(h, w);
  for (std::size_t r = 0; r < h; ++r) {
    for (std::size_t c = 0; c < w; ++c) {
      double v = 0.0;
      if (c + 1 < w) v += px(r, c);
      if (c > 0) v -= px(r, c - 1);
      if (r + 1 < h) v += py(r, c);
      if (r > 0) v -= py(r - 1, c);
      d(r, c) = v;
    }
  }
  return d;
}

double tv_value(const ImageGrid& img, double eps) {
  if (!(eps >= 0.0)) throw ParameterError("tv_value: eps must be non-negative");
  const GradientField g = gradient(img);
  return (g.gx.vector().array().square() + g.gy.vector().array().square() + eps * eps).sqrt().sum();
}

ImageGrid tv_gradient(const ImageGrid& img, double eps) {
  if (!(eps > 0.0)) throw ParameterError("tv_gradient: eps must be positive");
  GradientField g = gradient(img);
  const Eigen::ArrayXd inv_rho =
      (g.gx.vector().array().square() + g.gy.vector().array().square() + eps * eps).rsqrt();
  g.gx.vector().array() *= inv_rho;
  g.gy.vector().array() *= inv_rho;
  ImageGrid out = divergence(g);
  out.vector() = -out.vector();
  return out;
}

ImageGrid tv_correction_step(const ImageGrid& img, double mu, double eps) {
  if (!(mu > 0.0)) throw ParameterError("tv_correction_step: mu must be positive");
  if (!(eps > 0.0)) throw ParameterError("tv_correction_step: eps must be positive");
  ImageGrid out = img;
  out.vector() -= mu * tv_gradient(img, eps).vector();
  return out;
}

}  // namespace sl0mca
