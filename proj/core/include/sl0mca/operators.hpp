#pragma once

#include <filesystem>
#include <memory>
#include <string_view>

#include <Eigen/Cholesky>
#include <Eigen/Core>

namespace sl0mca {

enum class Backend { explicit_matrix, block_dct, multiscale_wavelet };

// Linear synthesis operator: coefficients (n_coeffs) -> image vector (n_pixels).
// Implementations are immutable after construction and safe to share.
class DictionaryOperator {
 public:
  virtual ~DictionaryOperator() = default;

  virtual Eigen::Index n_pixels() const noexcept = 0;
  virtual Eigen::Index n_coeffs() const noexcept = 0;
  virtual Backend backend() const noexcept = 0;

  // True when forward(adjoint(y)) == y for every image vector (A A^T = I).
  virtual bool is_tight_frame() const noexcept = 0;

  // Throws DimensionError on length mismatch.
  Eigen::VectorXd forward(const Eigen::VectorXd& coeffs) const;
  Eigen::VectorXd adjoint(const Eigen::VectorXd& image) const;

  // A A^T, n_pixels x n_pixels. The default probes forward(adjoint(e_i)).
  virtual Eigen::MatrixXd gram() const;

 protected:
  virtual Eigen::VectorXd apply_forward(const Eigen::VectorXd& coeffs) const = 0;
  virtual Eigen::VectorXd apply_adjoint(const Eigen::VectorXd& image) const = 0;
};

// Dense matrix dictionary for desk-scale problems.
class ExplicitDictionary final : public DictionaryOperator {
 public:
  explicit ExplicitDictionary(Eigen::MatrixXd matrix);

  Eigen::Index n_pixels() const noexcept override { return matrix_.rows(); }
  Eigen::Index n_coeffs() const noexcept override { return matrix_.cols(); }
  Backend backend() const noexcept override { return Backend::explicit_matrix; }
  bool is_tight_frame() const noexcept override { return false; }
  Eigen::MatrixXd gram() const override;

  const Eigen::MatrixXd& matrix() const noexcept { return matrix_; }

 protected:
  Eigen::VectorXd apply_forward(const Eigen::VectorXd& coeffs) const override;
  Eigen::VectorXd apply_adjoint(const Eigen::VectorXd& image) const override;

 private:
  Eigen::MatrixXd matrix_;
};

// Plain-text matrix: first line "rows cols", then whitespace-separated values.
Eigen::MatrixXd parse_matrix(std::string_view text);
Eigen::MatrixXd load_matrix_file(const std::filesystem::path& path);

// (s1, s2): texture coefficients for A and cartoon coefficients for B.
struct CoefficientPair {
  Eigen::VectorXd texture;
  Eigen::VectorXd cartoon;

  Eigen::Index total_size() const noexcept { return texture.size() + cartoon.size(); }
};

// The block operator [A B] with A = texture dictionary and B = cartoon dictionary.
class CombinedOperator {
 public:
  CombinedOperator(std::shared_ptr<const DictionaryOperator> texture,
                   std::shared_ptr<const DictionaryOperator> cartoon);

  const DictionaryOperator& texture() const noexcept { return *texture_; }
  const DictionaryOperator& cartoon() const noexcept { return *cartoon_; }
  Eigen::Index n_pixels() const noexcept { return texture_->n_pixels(); }

  // A s1 + B s2.
  Eigen::VectorXd forward(const CoefficientPair& s) const;
  // (A^T y, B^T y).
  CoefficientPair adjoint(const Eigen::VectorXd& y) const;

  // Minimum-norm solution of A s1 + B s2 = y: [A B]^T (A A^T + B B^T)^{-1} y.
  // Throws SingularityError when the Gram matrix is not invertible.
  CoefficientPair pseudo_inverse(const Eigen::VectorXd& y) const;

  // Both dictionaries are tight frames, so the pseudo-inverse is [A^T; B^T] / 2.
  bool uses_tight_frame_path() const noexcept { return tight_; }

  // Spectral norm of A A^T + B B^T (the squared norm of [A B]).
  double frame_bound() const noexcept { return frame_bound_; }

 private:
  std::shared_ptr<const DictionaryOperator> texture_;
  std::shared_ptr<const DictionaryOperator> cartoon_;
  bool tight_ = false;
  bool singular_ = false;
  double frame_bound_ = 0.0;
  Eigen::LLT<Eigen::MatrixXd> gram_factor_;
};

// Min-norm solutions A^T (A A^T)^{-1} b for a single dictionary. The Gram factor
// is computed once at construction; the dictionary must outlive the solver.
class MinNormSolver {
 public:
  explicit MinNormSolver(const DictionaryOperator& op);

  // Throws SingularityError when A A^T is not invertible.
  Eigen::VectorXd solve(const Eigen::VectorXd& b) const;

 private:
  const DictionaryOperator* op_;
  bool singular_ = false;
  Eigen::LLT<Eigen::MatrixXd> gram_factor_;
};

// (I - A^T (A A^T)^{-1} A) s, the projector onto the null space of A, applied
// to a coefficient vector. Tight frames reduce to s - A^T A s.
Eigen::VectorXd orth_complement_projection(const DictionaryOperator& op, const Eigen::VectorXd& s);

// [A B]^dagger c.
CoefficientPair min_l2_init(const CombinedOperator& comb, const Eigen::VectorXd& c);

// Nearest point (in l2) to s on the affine set {A s1 + B s2 = c}:
// s + [A B]^dagger (c - A s1 - B s2).
CoefficientPair feasibility_projection(const CombinedOperator& comb, const CoefficientPair& s,
                                       const Eigen::VectorXd& c);

}  // namespace sl0mca
