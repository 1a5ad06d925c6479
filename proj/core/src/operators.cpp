#include "sl0mca/operators.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>

#include <Eigen/Eigenvalues>

#include "sl0mca/errors.hpp"

namespace sl0mca {
namespace {

// Reciprocal condition estimates below this are treated as rank deficiency.
constexpr double kSingularRcond = 1e-12;

Eigen::LLT<Eigen::MatrixXd> factor_gram(const Eigen::MatrixXd& gram, bool& singular) {
  Eigen::LLT<Eigen::MatrixXd> llt(gram);
  singular = llt.info() != Eigen::Success || !(llt.rcond() > kSingularRcond);
  return llt;
}

void check_length(Eigen::Index got, Eigen::Index want, const char* what) {
  if (got != want) {
    throw DimensionError(std::string(what) + ": expected length " + std::to_string(want) + ", got " +
                         std::to_string(got));
  }
}

}  // namespace

Eigen::VectorXd DictionaryOperator::forward(const Eigen::VectorXd& coeffs) const {
  check_length(coeffs.size(), n_coeffs(), "forward");
  return apply_forward(coeffs);
}

Eigen::VectorXd DictionaryOperator::adjoint(const Eigen::VectorXd& image) const {
  check_length(image.size(), n_pixels(), "adjoint");
  return apply_adjoint(image);
}

Eigen::MatrixXd DictionaryOperator::gram() const {
  const Eigen::Index n = n_pixels();
  Eigen::MatrixXd g(n, n);
  Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    e[i] = 1.0;
    g.col(i) = apply_forward(apply_adjoint(e));
    e[i] = 0.0;
  }
  return 0.5 * (g + g.transpose());
}

ExplicitDictionary::ExplicitDictionary(Eigen::MatrixXd matrix) : matrix_(std::move(matrix)) {
  if (matrix_.rows() == 0 || matrix_.cols() == 0) {
    throw DimensionError("ExplicitDictionary: matrix must be non-empty");
  }
  if (!matrix_.allFinite()) throw ParameterError("ExplicitDictionary: matrix has non-finite entries");
}

Eigen::MatrixXd ExplicitDictionary::gram() const { return matrix_ * matrix_.transpose(); }

Eigen::VectorXd ExplicitDictionary::apply_forward(const Eigen::VectorXd& coeffs) const {
  return matrix_ * coeffs;
}

Eigen::VectorXd ExplicitDictionary::apply_adjoint(const Eigen::VectorXd& image) const {
  return matrix_.transpose() * image;
}

Eigen::MatrixXd parse_matrix(std::string_view text) {
  std::size_t pos = 0;
  auto skip_space = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto next_token = [&]() -> std::pair<std::string_view, std::size_t> {
    skip_space();
    const std::size_t start = pos;
    while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    return {text.substr(start, pos - start), start};
  };
  auto read_count = [&](const char* what) {
    auto [tok, at] = next_token();
    long value = 0;
    auto res = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (tok.empty() || res.ec != std::errc{} || res.ptr != tok.data() + tok.size() || value <= 0) {
      throw ParseError(std::string("matrix file: invalid ") + what, at);
    }
    return static_cast<Eigen::Index>(value);
  };

  const Eigen::Index rows = read_count("row count");
  const Eigen::Index cols = read_count("column count");
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) {
      auto [tok, at] = next_token();
      if (tok.empty()) throw ParseError("matrix file: too few values", at);
      double v = 0.0;
      auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size()) {
        throw ParseError("matrix file: invalid number", at);
      }
      m(r, c) = v;
    }
  }
  auto [extra, at] = next_token();
  if (!extra.empty()) throw ParseError("matrix file: trailing data", at);
  return m;
}

Eigen::MatrixXd load_matrix_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open matrix file: " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_matrix(ss.str());
}

CombinedOperator::CombinedOperator(std::shared_ptr<const DictionaryOperator> texture,
                                   std::shared_ptr<const DictionaryOperator> cartoon)
    : texture_(std::move(texture)), cartoon_(std::move(cartoon)) {
  if (!texture_ || !cartoon_) throw ParameterError("CombinedOperator: null dictionary");
  if (texture_->n_pixels() != cartoon_->n_pixels()) {
    throw DimensionError("CombinedOperator: dictionaries disagree on n_pixels");
  }
  tight_ = texture_->is_tight_frame() && cartoon_->is_tight_frame();
  if (tight_) {
    frame_bound_ = 2.0;
    return;
  }
  const Eigen::MatrixXd gram = texture_->gram() + cartoon_->gram();
  gram_factor_ = factor_gram(gram, singular_);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram, Eigen::EigenvaluesOnly);
  frame_bound_ = eig.eigenvalues().maxCoeff();
}

Eigen::VectorXd CombinedOperator::forward(const CoefficientPair& s) const {
  return texture_->forward(s.texture) + cartoon_->forward(s.cartoon);
}

CoefficientPair CombinedOperator::adjoint(const Eigen::VectorXd& y) const {
  return {texture_->adjoint(y), cartoon_->adjoint(y)};
}

CoefficientPair CombinedOperator::pseudo_inverse(const Eigen::VectorXd& y) const {
  check_length(y.size(), n_pixels(), "pseudo_inverse");
  if (tight_) {
    CoefficientPair out = adjoint(y);
    out.texture *= 0.5;
    out.cartoon *= 0.5;
    return out;
  }
  if (singular_) throw SingularityError("A A^T + B B^T is singular: [A B] lacks full row rank");
  return adjoint(gram_factor_.solve(y));
}

MinNormSolver::MinNormSolver(const DictionaryOperator& op) : op_(&op) {
  if (!op.is_tight_frame()) gram_factor_ = factor_gram(op.gram(), singular_);
}

Eigen::VectorXd MinNormSolver::solve(const Eigen::VectorXd& b) const {
  check_length(b.size(), op_->n_pixels(), "MinNormSolver::solve");
  if (op_->is_tight_frame()) return op_->adjoint(b);
  if (singular_) throw SingularityError("A A^T is singular: dictionary lacks full row rank");
  return op_->adjoint(gram_factor_.solve(b));
}

Eigen::VectorXd orth_complement_projection(const DictionaryOperator& op, const Eigen::VectorXd& s) {
  check_length(s.size(), op.n_coeffs(), "orth_complement_projection");
  return s - MinNormSolver(op).solve(op.forward(s));
}

CoefficientPair min_l2_init(const CombinedOperator& comb, const Eigen::VectorXd& c) {
  return comb.pseudo_inverse(c);
}

CoefficientPair feasibility_projection(const CombinedOperator& comb, const CoefficientPair& s,
                                       const Eigen::VectorXd& c) {
  check_length(c.size(), comb.n_pixels(), "feasibility_projection");
  CoefficientPair correction = comb.pseudo_inverse(c - comb.forward(s));
  correction.texture += s.texture;
  correction.cartoon += s.cartoon;
  return correction;
}

}  // namespace sl0mca
