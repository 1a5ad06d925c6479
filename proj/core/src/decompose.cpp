#include "sl0mca/decompose.hpp"

#include <string>

#include "sl0mca/errors.hpp"
#include "sl0mca/sl0.hpp"
#include "sl0mca/tv.hpp"

namespace sl0mca {

void SolverConfig::validate() const {
  if (outer < 1) throw ParameterError("outer iterations must be >= 1");
  if (inner < 1) throw ParameterError("inner iterations must be >= 1");
  if (!(sigma_decay > 0.0 && sigma_decay < 1.0)) throw ParameterError("sigma decay must lie in (0,1)");
  if (!(mu_texture > 0.0) || !(mu_cartoon > 0.0)) throw ParameterError("step sizes must be positive");
}

std::size_t count_significant(const Eigen::VectorXd& s, double rel_threshold) {
  if (s.size() == 0) return 0;
  const double peak = s.cwiseAbs().maxCoeff();
  if (peak == 0.0) return 0;
  return static_cast<std::size_t>((s.array().abs() > rel_threshold * peak).count());
}

namespace {

Eigen::VectorXd stacked(const CoefficientPair& s) {
  Eigen::VectorXd all(s.total_size());
  all << s.texture, s.cartoon;
  return all;
}

}  // namespace

DecompositionResult decompose(const ImageGrid& c, const CombinedOperator& comb, const SolverConfig& cfg) {
  cfg.validate();
  if (c.vector().size() != comb.n_pixels()) {
    throw DimensionError("decompose: image has " + std::to_string(c.size()) + " pixels, operators expect " +
                         std::to_string(comb.n_pixels()));
  }
  const Eigen::VectorXd& y = c.vector();

  DecompositionResult result;
  result.coeffs = min_l2_init(comb, y);
  if (result.coeffs.texture.isZero(0.0) && result.coeffs.cartoon.isZero(0.0)) {
    result.texture = ImageGrid(c.height(), c.width());
    result.cartoon = ImageGrid(c.height(), c.width());
    return result;
  }

  const SigmaSchedule schedule = make_sigma_schedule(stacked(result.coeffs), cfg.outer, cfg.sigma_decay);
  CoefficientPair& s = result.coeffs;
  for (std::size_t n = 0; n < schedule.size(); ++n) {
    const double sigma = schedule[n];
    for (int k = 0; k < cfg.inner; ++k) {
      s.texture -= cfg.mu_texture * smoothed_l0_ascent_direction(s.texture, sigma);
      s.cartoon -= cfg.mu_cartoon * smoothed_l0_ascent_direction(s.cartoon, sigma);
      s = feasibility_projection(comb, s, y);
    }

    IterationRecord rec;
    rec.n = static_cast<int>(n) + 1;
    rec.sigma = sigma;
    rec.residual = (y - comb.forward(s)).norm();
    rec.l0_texture = static_cast<double>(s.texture.size()) - smoothed_l0_value(s.texture, sigma);
    rec.l0_cartoon = static_cast<double>(s.cartoon.size()) - smoothed_l0_value(s.cartoon, sigma);
    rec.tv_cartoon = tv_value(ImageGrid(c.height(), c.width(), comb.cartoon().forward(s.cartoon)), 0.0);
    result.iterations.push_back(rec);
  }

  result.texture = ImageGrid(c.height(), c.width(), comb.texture().forward(s.texture));
  result.cartoon = ImageGrid(c.height(), c.width(), comb.cartoon().forward(s.cartoon));
  return result;
}

}  // namespace sl0mca
