#include "sl0mca/sl0.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "sl0mca/errors.hpp"

namespace sl0mca {
namespace {

void check_sigma(double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw ParameterError("sigma must be positive and finite, got " + std::to_string(sigma));
  }
}

}  // namespace

SigmaSchedule::SigmaSchedule(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw ParameterError("SigmaSchedule: empty");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    check_sigma(values_[i]);
    if (i > 0 && !(values_[i] < values_[i - 1])) {
      throw ParameterError("SigmaSchedule: values must be strictly decreasing");
    }
  }
}

double smoothed_l0_value(const Eigen::VectorXd& s, double sigma) {
  check_sigma(sigma);
  const double scale = 1.0 / (2.0 * sigma * sigma);
  return (-s.array().square() * scale).exp().sum();
}

Eigen::VectorXd smoothed_l0_ascent_direction(const Eigen::VectorXd& s, double sigma) {
  check_sigma(sigma);
  const double scale = 1.0 / (2.0 * sigma * sigma);
  return s.array() * (-s.array().square() * scale).exp();
}

SigmaSchedule make_sigma_schedule(const Eigen::VectorXd& s_init, int count, double decay) {
  if (count < 1) throw ParameterError("sigma schedule length must be >= 1");
  if (!(decay > 0.0 && decay < 1.0)) throw ParameterError("sigma decay must lie in (0,1)");
  const double peak = s_init.size() == 0 ? 0.0 : s_init.cwiseAbs().maxCoeff();
  if (!(peak > 0.0)) {
    throw DegenerateInputError("sigma schedule: initial coefficients are all zero");
  }
  std::vector<double> values(static_cast<std::size_t>(count));
  double sigma = 2.0 * peak;
  for (auto& v : values) {
    v = sigma;
    sigma *= decay;
  }
  return SigmaSchedule(std::move(values));
}

Eigen::VectorXd sl0_solve(const DictionaryOperator& phi, const Eigen::VectorXd& b,
                          const SigmaSchedule& schedule, const Sl0Options& options) {
  if (options.inner_iterations < 1) throw ParameterError("sl0_solve: inner iterations must be >= 1");
  if (!(options.mu > 0.0)) throw ParameterError("sl0_solve: mu must be positive");

  const MinNormSolver pinv(phi);
  Eigen::VectorXd alpha = pinv.solve(b);
  for (const double sigma : schedule) {
    for (int k = 0; k < options.inner_iterations; ++k) {
      const Eigen::VectorXd direction = smoothed_l0_ascent_direction(alpha, sigma);
      const double mu = options.step_size ? options.step_size(alpha, direction, sigma) : options.mu;
      if (!(mu > 0.0)) throw ParameterError("sl0_solve: step-size rule returned a non-positive step");
      alpha -= mu * direction;
      alpha += pinv.solve(b - phi.forward(alpha));
    }
  }
  return alpha;
}

}  // namespace sl0mca
