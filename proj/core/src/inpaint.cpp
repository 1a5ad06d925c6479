#include "sl0mca/inpaint.hpp"

#include <string>

#include "sl0mca/errors.hpp"
#include "sl0mca/sl0.hpp"
#include "sl0mca/tv.hpp"

namespace sl0mca {
namespace {

void check_shapes(const ImageGrid& c, const MaskGrid& mask, const CombinedOperator& comb) {
  if (!mask.matches(c)) throw DimensionError("inpaint: mask shape differs from image shape");
  if (c.vector().size() != comb.n_pixels()) {
    throw DimensionError("inpaint: image has " + std::to_string(c.size()) + " pixels, operators expect " +
                         std::to_string(comb.n_pixels()));
  }
}

ImageGrid as_image(const ImageGrid& like, Eigen::VectorXd v) {
  return ImageGrid(like.height(), like.width(), std::move(v));
}

}  // namespace

void InpaintConfig::validate() const {
  if (outer < 1) throw ParameterError("outer iterations must be >= 1");
  if (inner < 1) throw ParameterError("inner iterations must be >= 1");
  if (!(lambda_max > 0.0)) throw ParameterError("lambda_max must be positive");
  if (!(gamma >= 0.0)) throw ParameterError("gamma must be non-negative");
  if (!(mu_tv > 0.0)) throw ParameterError("mu_tv must be positive");
  if (!(eps_tv > 0.0)) throw ParameterError("eps_tv must be positive");
  if (!(sigma_decay > 0.0 && sigma_decay < 1.0)) throw ParameterError("sigma decay must lie in (0,1)");
  if (!(mu_texture > 0.0) || !(mu_cartoon > 0.0)) throw ParameterError("step sizes must be positive");
}

LambdaSchedule lambda_schedule(double lambda_max, int count) {
  if (!(lambda_max > 0.0)) throw ParameterError("lambda_max must be positive");
  if (count < 1) throw ParameterError("lambda schedule length must be >= 1");
  // lambda_max * (N - n) / N is the closed form of repeated subtraction and
  // avoids accumulating rounding error.
  std::vector<double> values(static_cast<std::size_t>(count));
  for (int n = 0; n < count; ++n) values[static_cast<std::size_t>(n)] = lambda_max * (count - n) / count;
  return LambdaSchedule(std::move(values));
}

double relaxed_cost(const CoefficientPair& s, const ImageGrid& c, const MaskGrid& mask,
                    const CombinedOperator& comb, double sigma, double lambda, double gamma,
                    double eps_tv) {
  check_shapes(c, mask, comb);
  const Eigen::VectorXd cartoon = comb.cartoon().forward(s.cartoon);
  const Eigen::VectorXd residual =
      (c.vector() - comb.texture().forward(s.texture) - cartoon).cwiseProduct(mask.weights());
  double cost = static_cast<double>(s.texture.size()) - smoothed_l0_value(s.texture, sigma);
  cost += static_cast<double>(s.cartoon.size()) - smoothed_l0_value(s.cartoon, sigma);
  cost += lambda * residual.squaredNorm();
  if (gamma != 0.0) cost += gamma * tv_value(as_image(c, cartoon), eps_tv);
  return cost;
}

CoefficientPair data_term_gradient(const CoefficientPair& s, const ImageGrid& c, const MaskGrid& mask,
                                   const CombinedOperator& comb, double lambda) {
  check_shapes(c, mask, comb);
  const Eigen::VectorXd masked_residual = (c.vector() - comb.forward(s)).cwiseProduct(mask.weights());
  CoefficientPair g = comb.adjoint(masked_residual);
  g.texture *= -2.0 * lambda;
  g.cartoon *= -2.0 * lambda;
  return g;
}

InpaintResult inpaint(const ImageGrid& c, const MaskGrid& mask, const CombinedOperator& comb,
                      const InpaintConfig& cfg) {
  cfg.validate();
  check_shapes(c, mask, comb);
  if (mask.known_count() == 0) throw DegenerateInputError("inpaint: mask has no known pixels");

  const ImageGrid observed = zero_fill(c, mask);
  const Eigen::VectorXd weights = mask.weights();

  InpaintResult result;
  DecompositionResult& dec = result.decomposition;
  CoefficientPair& s = dec.coeffs;
  s = min_l2_init(comb, observed.vector());

  const bool all_zero = s.texture.isZero(0.0) && s.cartoon.isZero(0.0);
  if (!all_zero) {
    Eigen::VectorXd stacked(s.total_size());
    stacked << s.texture, s.cartoon;
    const SigmaSchedule sigmas = make_sigma_schedule(stacked, cfg.outer, cfg.sigma_decay);
    const LambdaSchedule lambdas = lambda_schedule(cfg.lambda_max, cfg.outer);
    // Curvature bound of the data term per unit lambda: 2 ||[A B]||^2.
    const double data_curvature = 2.0 * comb.frame_bound();

    for (std::size_t n = 0; n < sigmas.size(); ++n) {
      const double sigma = sigmas[n];
      const double lambda = lambdas[n];
      const double sigma2 = sigma * sigma;
      // Step mu * sigma^2 against the true gradient, shrunk so the combined
      // curvature 1/sigma^2 + data_curvature * lambda stays within 2 / step.
      const double damping = 1.0 / (1.0 + data_curvature * lambda * sigma2);
      for (int k = 0; k < cfg.inner; ++k) {
        const CoefficientPair g = data_term_gradient(s, observed, mask, comb, lambda);
        const Eigen::VectorXd dir_t = smoothed_l0_ascent_direction(s.texture, sigma);
        const Eigen::VectorXd dir_c = smoothed_l0_ascent_direction(s.cartoon, sigma);
        s.texture -= cfg.mu_texture * damping * (dir_t + sigma2 * g.texture);
        s.cartoon -= cfg.mu_cartoon * damping * (dir_c + sigma2 * g.cartoon);
      }

      ImageGrid cartoon = as_image(c, comb.cartoon().forward(s.cartoon));
      if (cfg.gamma > 0.0) {
        const ImageGrid corrected = tv_correction_step(cartoon, cfg.gamma * cfg.mu_tv, cfg.eps_tv);
        s.cartoon += comb.cartoon().adjoint(corrected.vector() - cartoon.vector());
        cartoon = as_image(c, comb.cartoon().forward(s.cartoon));
      }

      IterationRecord rec;
      rec.n = static_cast<int>(n) + 1;
      rec.sigma = sigma;
      rec.lambda = lambda;
      rec.residual = (observed.vector() - comb.texture().forward(s.texture) - cartoon.vector())
                         .cwiseProduct(weights)
                         .norm();
      rec.l0_texture = static_cast<double>(s.texture.size()) - smoothed_l0_value(s.texture, sigma);
      rec.l0_cartoon = static_cast<double>(s.cartoon.size()) - smoothed_l0_value(s.cartoon, sigma);
      rec.tv_cartoon = tv_value(cartoon, 0.0);
      dec.iterations.push_back(rec);
    }
  }

  dec.texture = as_image(c, comb.texture().forward(s.texture));
  dec.cartoon = as_image(c, comb.cartoon().forward(s.cartoon));
  result.image = as_image(c, dec.texture.vector() + dec.cartoon.vector());
  if (cfg.reimpose_known) {
    for (std::size_t i = 0; i < mask.size(); ++i) {
      if (mask.known(i)) result.image.vector()[static_cast<Eigen::Index>(i)] = c.vector()[static_cast<Eigen::Index>(i)];
    }
  }
  return result;
}

}  // namespace sl0mca
