#pragma once

#include <cstddef>
#include <vector>

#include "sl0mca/decompose.hpp"
#include "sl0mca/image.hpp"
#include "sl0mca/operators.hpp"

namespace sl0mca {

struct InpaintConfig {
  int outer = 5;             // N, number of sigma values
  int inner = 10;            // L, descent steps per sigma
  double lambda_max = 2.0;   // data-fidelity weight at the first outer iteration
  double gamma = 0.1;        // TV weight on the cartoon layer
  double mu_tv = 0.1;        // TV correction step (scaled by gamma)
  double eps_tv = 1e-3;      // TV smoothing
  double sigma_decay = 0.5;
  double mu_texture = 2.0;   // in sigma^2 units
  double mu_cartoon = 2.0;   // in sigma^2 units
  bool reimpose_known = true;

  // Throws ParameterError.
  void validate() const;
};

// lambda_1 = lambda_max, lambda_{n+1} = lambda_n - lambda_max / N.
class LambdaSchedule {
 public:
  explicit LambdaSchedule(std::vector<double> values) : values_(std::move(values)) {}

  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  const std::vector<double>& values() const noexcept { return values_; }

 private:
  std::vector<double> values_;
};

LambdaSchedule lambda_schedule(double lambda_max, int count);

// J = (M1 - F_sigma(s1)) + (M2 - F_sigma(s2)) + lambda ||M (c - A s1 - B s2)||^2
//     + gamma * TV_eps(B s2)
double relaxed_cost(const CoefficientPair& s, const ImageGrid& c, const MaskGrid& mask,
                    const CombinedOperator& comb, double sigma, double lambda, double gamma,
                    double eps_tv);

// Exact gradient of lambda ||M (c - A s1 - B s2)||^2:
// (-2 lambda A^T M r, -2 lambda B^T M r), r = c - A s1 - B s2.
CoefficientPair data_term_gradient(const CoefficientPair& s, const ImageGrid& c, const MaskGrid& mask,
                                   const CombinedOperator& comb, double lambda);

struct InpaintResult {
  ImageGrid image;  // A s1 + B s2, known pixels optionally restored from c
  DecompositionResult decomposition;
};

// Masked reconstruction. Missing pixels are zero-filled, the coefficients are
// initialised with the min-norm solution, and each outer iteration runs
// `inner` descent steps on the relaxed cost followed by one TV correction of
// the cartoon layer, pulled back into s2 through B^T.
InpaintResult inpaint(const ImageGrid& c, const MaskGrid& mask, const CombinedOperator& comb,
                      const InpaintConfig& cfg = {});

}  // namespace sl0mca
