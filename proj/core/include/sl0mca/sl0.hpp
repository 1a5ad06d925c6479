#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include <Eigen/Core>

#include "sl0mca/operators.hpp"

namespace sl0mca {

// Strictly decreasing sequence of positive smoothing widths.
class SigmaSchedule {
 public:
  // Throws ParameterError unless values is non-empty, positive and strictly decreasing.
  explicit SigmaSchedule(std::vector<double> values);

  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  const std::vector<double>& values() const noexcept { return values_; }
  auto begin() const noexcept { return values_.begin(); }
  auto end() const noexcept { return values_.end(); }

 private:
  std::vector<double> values_;
};

// F_sigma(s) = sum_i exp(-s_i^2 / (2 sigma^2)). Counts (approximately) the zero
// entries, so size(s) - F_sigma(s) approximates the l0 norm.
double smoothed_l0_value(const Eigen::VectorXd& s, double sigma);

// Entries s_i exp(-s_i^2 / (2 sigma^2)): sigma^2 times the gradient of
// size(s) - F_sigma(s).
Eigen::VectorXd smoothed_l0_ascent_direction(const Eigen::VectorXd& s, double sigma);

// values[0] = 2 max|s_init|, values[k] = values[0] * decay^k, k < count.
// Throws DegenerateInputError for an all-zero s_init.
SigmaSchedule make_sigma_schedule(const Eigen::VectorXd& s_init, int count, double decay);

// Optional step-size rule: given the iterate, the ascent direction and the
// current sigma, returns the step mu (in sigma^2 units).
using StepSizeRule =
    std::function<double(const Eigen::VectorXd& alpha, const Eigen::VectorXd& direction, double sigma)>;

struct Sl0Options {
  int inner_iterations = 10;
  double mu = 2.0;
  StepSizeRule step_size;  // empty: fixed mu
};

// Smoothed-l0 recovery of a sparse alpha with phi * alpha = b. Starts from the
// min-norm solution; for each sigma runs inner_iterations of
//   alpha <- alpha - mu * ascent_direction(alpha, sigma)
//   alpha <- alpha + phi^dagger (b - phi alpha)
// The result is always feasible.
Eigen::VectorXd sl0_solve(const DictionaryOperator& phi, const Eigen::VectorXd& b,
                          const SigmaSchedule& schedule, const Sl0Options& options = {});

}  // namespace sl0mca
