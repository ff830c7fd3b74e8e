#pragma once

// Left-invariant Hermitian metrics omega = (i/2) sum H_ab phi^a ^ conj(phi^b),
// held either exactly over Q(i, sqrt3) or in double precision.

#include <Eigen/Dense>

#include <complex>
#include <variant>

#include "liebc/linalg.hpp"

namespace liebc {

using ExactMatrix = DenseMatrix<FieldElement>;
using ComplexMatrix = Eigen::MatrixXcd;

enum class ArithmeticMode { exact, floating };

inline ComplexMatrix to_numeric(const ExactMatrix& m) {
  ComplexMatrix out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = m(r, c).to_complex();
  return out;
}

class HermitianMetric {
 public:
  static HermitianMetric exact(ExactMatrix h) {
    check_square(h.rows(), h.cols());
    for (std::size_t a = 0; a < h.rows(); ++a)
      for (std::size_t b = 0; b < h.cols(); ++b)
        if (!(h(a, b) == h(b, a).conj())) throw Error(ErrorCode::invalid_argument, "metric matrix is not Hermitian");
    // Sylvester: all leading principal minors are real and positive.
    for (std::size_t k = 1; k <= h.rows(); ++k) {
      ExactMatrix lead(k, k);
      for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b) lead(a, b) = h(a, b);
      FieldElement det = determinant(lead);
      if (!det.is_real() || det.real_sign() <= 0)
        throw Error(ErrorCode::singular_metric, "metric matrix is not positive definite");
    }
    HermitianMetric m;
    m.value_ = std::move(h);
    return m;
  }

  static HermitianMetric numeric(ComplexMatrix h) {
    check_square(h.rows(), h.cols());
    if ((h - h.adjoint()).norm() > 1e-12 * (1 + h.norm()))
      throw Error(ErrorCode::invalid_argument, "metric matrix is not Hermitian");
    h = (h + h.adjoint()) / 2.0;
    Eigen::LLT<ComplexMatrix> llt(h);
    if (llt.info() != Eigen::Success) throw Error(ErrorCode::singular_metric, "metric matrix is not positive definite");
    HermitianMetric m;
    m.value_ = std::move(h);
    return m;
  }

  ArithmeticMode mode() const {
    return std::holds_alternative<ExactMatrix>(value_) ? ArithmeticMode::exact : ArithmeticMode::floating;
  }
  int n() const {
    return mode() == ArithmeticMode::exact ? static_cast<int>(std::get<ExactMatrix>(value_).rows())
                                           : static_cast<int>(std::get<ComplexMatrix>(value_).rows());
  }

  const ExactMatrix& exact_matrix() const {
    if (mode() != ArithmeticMode::exact) throw Error(ErrorCode::invalid_argument, "metric is not held exactly");
    return std::get<ExactMatrix>(value_);
  }
  ComplexMatrix numeric_matrix() const {
    return mode() == ArithmeticMode::exact ? to_numeric(std::get<ExactMatrix>(value_)) : std::get<ComplexMatrix>(value_);
  }

  HermitianMetric scaled(const FieldElement& c) const {
    if (mode() == ArithmeticMode::exact) return exact(c * exact_matrix());
    return numeric(numeric_matrix() * c.to_complex());
  }
  HermitianMetric to_floating() const { return numeric(numeric_matrix()); }

 private:
  static void check_square(std::size_t r, std::size_t c) {
    if (r != c || r == 0) throw Error(ErrorCode::invalid_argument, "metric matrix must be square and nonempty");
  }
  std::variant<ExactMatrix, ComplexMatrix> value_;
};

// Gram matrix G_ab = <phi^a, phi^b> on (1,0)-covectors, G = 2 (H^{-1})^T.
inline ExactMatrix coframe_gram(const ExactMatrix& h) {
  auto inv = inverse(h);
  if (!inv) throw Error(ErrorCode::singular_metric, "metric matrix is singular");
  ExactMatrix g = inv->transpose();
  return FieldElement(2) * g;
}

inline ComplexMatrix coframe_gram(const ComplexMatrix& h) {
  Eigen::FullPivLU<ComplexMatrix> lu(h);
  if (!lu.isInvertible()) throw Error(ErrorCode::singular_metric, "metric matrix is singular");
  return 2.0 * lu.inverse().transpose();
}

}  // namespace liebc
