#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Core>

#include "sl0mca/image.hpp"
#include "sl0mca/operators.hpp"

namespace sl0mca {

// Settings for the mask-free two-dictionary decomposition.
struct SolverConfig {
  int outer = 5;               // number of sigma values N
  int inner = 10;              // gradient steps per sigma L
  double sigma_decay = 0.5;    // sigma_{k+1} = decay * sigma_k
  double mu_texture = 2.0;     // step for s1, in sigma^2 units
  double mu_cartoon = 2.0;     // step for s2, in sigma^2 units

  // Throws ParameterError.
  void validate() const;
};

// Diagnostics captured at the end of each outer (sigma) iteration.
struct IterationRecord {
  int n = 0;                 // 1-based outer index
  double sigma = 0.0;
  double lambda = 0.0;       // 0 in mask-free mode
  double residual = 0.0;     // ||M (c - A s1 - B s2)||_2
  double l0_texture = 0.0;   // M1 - F_sigma(s1)
  double l0_cartoon = 0.0;   // M2 - F_sigma(s2)
  double tv_cartoon = 0.0;   // isotropic TV of B s2
};

struct DecompositionResult {
  CoefficientPair coeffs;
  ImageGrid texture;  // A s1
  ImageGrid cartoon;  // B s2
  std::vector<IterationRecord> iterations;
};

// Number of entries with |s_i| > rel_threshold * max|s|.
std::size_t count_significant(const Eigen::VectorXd& s, double rel_threshold = 1e-8);

// Sparse decomposition c = A s1 + B s2 by smoothed-l0 continuation. Starts from
// the min-norm solution, builds the sigma schedule from it, and for each sigma
// performs `inner` steps of s_k <- s_k - mu_k * ascent_direction(s_k, sigma),
// each followed by the feasibility projection. An all-zero input returns zero
// coefficients without iterating.
DecompositionResult decompose(const ImageGrid& c, const CombinedOperator& comb, const SolverConfig& cfg = {});

}  // namespace sl0mca
