#pragma once

// Hermitian geometry of left-invariant metrics: Kahler form, pluriclosed test,
// L2 adjoints of del and delbar, the Bismut Ricci (1,1)-form, the Bismut
// connection and its curvature, and the torus pairing.
//
// Everything is expressed in the complex frame w_0..w_{2n-1} dual to
// phi^1..phi^n, conj(phi)^1..conj(phi)^n, whose brackets are read off the
// structure equations via d psi(x, y) = -psi([x, y]).

#include <array>

#include "liebc/cohomology.hpp"

namespace liebc {

// omega = (i/2) sum H_ab phi^a ^ conj(phi^b)
inline Form kahler_form(const ExactMatrix& h) {
  const int n = static_cast<int>(h.rows());
  const FieldElement half_i(0, 0, Rational(1, 2), 0);
  Form out(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) out.add(Monomial{1u << a, 1u << b}, half_i * h(a, b));
  return out;
}

// H with omega = (i/2) sum H_ab phi^{a bbar}, for a (1,1)-form.
inline ExactMatrix metric_matrix(const Form& omega) {
  const int n = omega.n();
  ExactMatrix h(n, n);
  const FieldElement minus_two_i(0, 0, -2, 0);
  for (const auto& [m, c] : omega.terms()) {
    if (m.p() != 1 || m.q() != 1) throw Error(ErrorCode::bidegree_mismatch, "expected a (1,1)-form");
    h(std::countr_zero(m.holo), std::countr_zero(m.anti)) = minus_two_i * c;
  }
  return h;
}

inline SparseVec metric_vector(const Bicomplex& bc, const ExactMatrix& h) { return bc.to_vector(kahler_form(h), 1, 1); }

inline bool is_pluriclosed(const Bicomplex& bc, const ExactMatrix& h) {
  return bc.del_delbar(1, 1).apply(metric_vector(bc, h)).empty();
}

// Structure constants of the complex frame: [w_a, w_b] = sum_c bracket(c, a, b) w_c.
class FrameAlgebra {
 public:
  explicit FrameAlgebra(const StructureEquations& se) : n_(se.n), c_(8 * se.n * se.n * se.n) {
    const int N = 2 * n_;
    for (int c = 0; c < N; ++c) {
      Form d = c < n_ ? se.d(c) : se.del_of_bar(c - n_) + se.delbar_of_bar(c - n_);
      for (const auto& [m, coeff] : d.terms()) {
        std::array<int, 2> idx{};
        int k = 0;
        for (int j = 0; j < n_; ++j)
          if (m.holo >> j & 1u) idx[k++] = j;
        for (int j = 0; j < n_; ++j)
          if (m.anti >> j & 1u) idx[k++] = n_ + j;
        at(c, idx[0], idx[1]) = -coeff;
        at(c, idx[1], idx[0]) = coeff;
      }
    }
  }

  int n() const { return n_; }
  int dim() const { return 2 * n_; }
  const FieldElement& bracket(int c, int a, int b) const { return c_[(c * dim() + a) * dim() + b]; }

  // J = i on w_0..w_{n-1} and -i on the conjugates.
  FieldElement j_eigenvalue(int a) const { return a < n_ ? FieldElement::i() : -FieldElement::i(); }

  // Constant Chern-Ricci form of the invariant volume: rho0(x, y) = -1/2 tr(J ad_{[x,y]}).
  Form chern_ricci() const {
    Form out(n_);
    for (int a = 0; a < dim(); ++a)
      for (int b = a + 1; b < dim(); ++b) {
        FieldElement tr;
        for (int e = 0; e < dim(); ++e) {
          const FieldElement& z = bracket(e, a, b);
          if (z.is_zero()) continue;
          for (int c = 0; c < dim(); ++c) {
            const FieldElement& x = bracket(c, e, c);
            if (!x.is_zero()) tr += z * x * j_eigenvalue(c);
          }
        }
        if (tr.is_zero()) continue;
        out.add(detail::pair_monomial(a, b, n_), Rational(-1, 2) * tr);
      }
    return out;
  }

 private:
  FieldElement& at(int c, int a, int b) { return c_[(c * dim() + a) * dim() + b]; }
  int n_;
  std::vector<FieldElement> c_;
};

// D* = Q_s^{-1} D^H Q_t with Q = conj(Gram), for D mapping (p,q) into the target block.
inline ExactMatrix exact_adjoint(const Bicomplex& bc, const ExactMatrix& h, const GradedBlockMap& d) {
  ExactMatrix qs = monomial_gram(bc, h, d.source_p, d.source_q).conjugate();
  ExactMatrix qt = monomial_gram(bc, h, d.target_p, d.target_q).conjugate();
  auto qs_inv = inverse(qs);
  if (!qs_inv) throw Error(ErrorCode::singular_metric, "singular Gram matrix");
  return *qs_inv * d.matrix.to_dense().adjoint() * qt;
}

inline ComplexMatrix to_numeric(const SparseMat& m) {
  ComplexMatrix out = ComplexMatrix::Zero(m.rows(), m.cols());
  for (std::size_t c = 0; c < m.cols(); ++c)
    for (const auto& [r, x] : m.column(c)) out(r, c) = x.to_complex();
  return out;
}

namespace detail {

inline ExactMatrix column_of(const SparseVec& v, std::size_t n) {
  ExactMatrix m(n, 1);
  for (const auto& [i, x] : v) m(i, 0) = x;
  return m;
}

}  // namespace detail

// (Ric^B)^{1,1} = rho0^{1,1} - (del del* omega + delbar delbar* omega), exactly.
inline Form bismut_ricci_11(const Bicomplex& bc, const ExactMatrix& h) {
  const std::size_t d11 = bc.dim(1, 1);
  ExactMatrix w = detail::column_of(metric_vector(bc, h), d11);
  const auto& del01 = bc.del(0, 1);
  const auto& delbar10 = bc.delbar(1, 0);
  ExactMatrix a = del01.matrix.to_dense() * (exact_adjoint(bc, h, del01) * w);
  ExactMatrix b = delbar10.matrix.to_dense() * (exact_adjoint(bc, h, delbar10) * w);
  Form out = FrameAlgebra(bc.equations()).chern_ricci().component(1, 1);
  for (std::size_t i = 0; i < d11; ++i) out.add(bc.basis(1, 1)[i], -(a(i, 0) + b(i, 0)));
  return out;
}

// Ricci coefficient matrix R with Ric^{1,1} = sum R_ab phi^{a bbar}.
inline ExactMatrix ricci_matrix(const Bicomplex& bc, const ExactMatrix& h) {
  ExactMatrix r(bc.n(), bc.n());
  Form ric = bismut_ricci_11(bc, h);
  for (const auto& [m, c] : ric.terms()) r(std::countr_zero(m.holo), std::countr_zero(m.anti)) = c;
  return r;
}

// Floating-point evaluation of the same operator, with the metric-independent
// pieces precomputed.
class NumericRicci {
 public:
  explicit NumericRicci(const Bicomplex& bc) : n_(bc.n()) {
    del01_ = to_numeric(bc.del(0, 1).matrix);
    delbar10_ = to_numeric(bc.delbar(1, 0).matrix);
    ddbar11_ = to_numeric(bc.del_delbar(1, 1));
    rho0_ = ComplexMatrix::Zero(n_, n_);
    Form rho0 = FrameAlgebra(bc.equations()).chern_ricci().component(1, 1);
    for (const auto& [m, c] : rho0.terms())
      rho0_(std::countr_zero(m.holo), std::countr_zero(m.anti)) = c.to_complex();
    for (const auto& m : bc.basis(1, 1)) pos11_.push_back({std::countr_zero(m.holo), std::countr_zero(m.anti)});
    for (const auto& m : bc.basis(1, 0)) pos10_.push_back(std::countr_zero(m.holo));
    for (const auto& m : bc.basis(0, 1)) pos01_.push_back(std::countr_zero(m.anti));
  }

  int n() const { return n_; }

  Eigen::VectorXcd omega_vector(const ComplexMatrix& h) const {
    Eigen::VectorXcd w(pos11_.size());
    for (std::size_t i = 0; i < pos11_.size(); ++i) w(i) = std::complex<double>(0, 0.5) * h(pos11_[i][0], pos11_[i][1]);
    return w;
  }

  ComplexMatrix ricci(const ComplexMatrix& h) const {
    ComplexMatrix g = coframe_gram(h);
    // Q = conj(Gram); on (1,1): <phi^{a bbar}, phi^{c dbar}> = G_ac conj(G_bd).
    const std::size_t m = pos11_.size();
    ComplexMatrix q11(m, m);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        q11(i, j) = std::conj(g(pos11_[i][0], pos11_[j][0])) * g(pos11_[i][1], pos11_[j][1]);
    ComplexMatrix q10(n_, n_), q01(n_, n_);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) {
        q10(i, j) = std::conj(g(pos10_[i], pos10_[j]));
        q01(i, j) = g(pos01_[i], pos01_[j]);
      }
    Eigen::VectorXcd qw = q11 * omega_vector(h);
    Eigen::VectorXcd a = del01_ * q01.partialPivLu().solve(del01_.adjoint() * qw);
    Eigen::VectorXcd b = delbar10_ * q10.partialPivLu().solve(delbar10_.adjoint() * qw);
    ComplexMatrix r = rho0_;
    for (std::size_t i = 0; i < m; ++i) r(pos11_[i][0], pos11_[i][1]) -= a(i) + b(i);
    return r;
  }

  // dH/dt for d omega/dt = -Ric^{1,1}.
  ComplexMatrix velocity(const ComplexMatrix& h) const {
    return std::complex<double>(0, 2) * ricci(h);
  }

  double pluriclosed_residual(const ComplexMatrix& h) const { return (ddbar11_ * omega_vector(h)).norm(); }

 private:
  int n_;
  ComplexMatrix del01_, delbar10_, ddbar11_, rho0_;
  std::vector<std::array<int, 2>> pos11_;
  std::vector<int> pos10_, pos01_;
};

// Evaluation of the (1,1)-class on the torus plane, normalized on the reference metric.
class TorusPairing {
 public:
  TorusPairing(int torus_slot, const ExactMatrix& reference) : slot_(torus_slot) {
    reference_ = reference(slot_, slot_);
    if (!reference_.is_real() || reference_.real_sign() <= 0)
      throw Error(ErrorCode::invalid_argument, "reference metric is not positive on the torus direction");
  }

  int slot() const { return slot_; }
  FieldElement operator()(const Form& x) const {
    const FieldElement minus_two_i(0, 0, -2, 0);
    return minus_two_i * x.coefficient(Monomial{1u << slot_, 1u << slot_}) / reference_;
  }
  FieldElement of_metric(const ExactMatrix& h) const { return h(slot_, slot_) / reference_; }
  double of_metric(const ComplexMatrix& h) const { return h(slot_, slot_).real() / reference_.to_complex().real(); }

 private:
  int slot_;
  FieldElement reference_;
};

// Bismut connection of (g, J) for g(w_a, conj w_b) = H_ab / 2, by the Koszul
// formula plus half the torsion. With omega(x, y) = g(Jx, y) the torsion that
// keeps J parallel is T(x, y, z) = d omega(Jx, Jy, Jz).
struct BismutConnection {
  int dim = 0;
  std::vector<ExactMatrix> action;  // action[a](c, b): coefficient of w_c in nabla_{w_a} w_b
  std::vector<FieldElement> torsion;  // T(w_a, w_b, w_c) at (a*dim + b)*dim + c
  ExactMatrix metric;                 // g(w_a, w_b)
};

inline BismutConnection bismut_connection(const FrameAlgebra& alg, const ExactMatrix& h) {
  const int n = alg.n(), N = alg.dim();
  BismutConnection conn;
  conn.dim = N;
  ExactMatrix g(N, N);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      g(a, n + b) = Rational(1, 2) * h(a, b);
      g(n + b, a) = Rational(1, 2) * h(a, b);
    }
  conn.metric = g;
  auto ginv = inverse(g);
  if (!ginv) throw Error(ErrorCode::singular_metric, "metric is degenerate");

  // g([x, y], z) for frame vectors.
  std::vector<FieldElement> gb(N * N * N);
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b)
      for (int c = 0; c < N; ++c) {
        FieldElement s;
        for (int e = 0; e < N; ++e)
          if (!alg.bracket(e, a, b).is_zero() && !g(e, c).is_zero()) s += alg.bracket(e, a, b) * g(e, c);
        gb[(a * N + b) * N + c] = s;
      }
  auto G3 = [&](int a, int b, int c) -> const FieldElement& { return gb[(a * N + b) * N + c]; };
  // omega(x, y) = g(Jx, y); d omega(x, y, z) = -omega([x,y], z) - omega([y,z], x) - omega([z,x], y).
  auto om_br = [&](int a, int b, int c) { return alg.j_eigenvalue(c) * -G3(a, b, c); };  // omega([a,b], c) = -omega(c, [a,b])
  conn.torsion.assign(N * N * N, FieldElement());
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b)
      for (int c = 0; c < N; ++c) {
        FieldElement dom = -(om_br(a, b, c) + om_br(b, c, a) + om_br(c, a, b));
        FieldElement jjj = alg.j_eigenvalue(a) * alg.j_eigenvalue(b) * alg.j_eigenvalue(c);
        conn.torsion[(a * N + b) * N + c] = jjj * dom;
      }

  conn.action.assign(N, ExactMatrix(N, N));
  for (int a = 0; a < N; ++a) {
    ExactMatrix low(N, N);  // low(c, b) = g(nabla_a w_b, w_c)
    for (int b = 0; b < N; ++b)
      for (int c = 0; c < N; ++c)
        low(c, b) = Rational(1, 2) * (G3(a, b, c) - G3(b, c, a) + G3(c, a, b) + conn.torsion[(a * N + b) * N + c]);
    conn.action[a] = *ginv * low;
  }
  return conn;
}

// Curvature R(w_a, w_b) = [A_a, A_b] - A_{[w_a, w_b]}; returns the first nonzero
// component, or nothing if the connection is flat.
struct CurvatureReport {
  bool flat = true;
  int a = 0, b = 0;
  ExactMatrix value;
};

inline CurvatureReport bismut_curvature(const FrameAlgebra& alg, const BismutConnection& conn) {
  const int N = conn.dim;
  CurvatureReport rep;
  for (int a = 0; a < N; ++a)
    for (int b = a + 1; b < N; ++b) {
      ExactMatrix r = conn.action[a] * conn.action[b] - conn.action[b] * conn.action[a];
      for (int e = 0; e < N; ++e)
        if (!alg.bracket(e, a, b).is_zero()) r = r - alg.bracket(e, a, b) * conn.action[e];
      if (!r.is_zero()) return {false, a, b, r};
    }
  return rep;
}

// Defect of nabla g = 0 and nabla J = 0; both are zero for a Hermitian connection.
inline bool preserves_metric(const BismutConnection& conn) {
  const int N = conn.dim;
  for (int a = 0; a < N; ++a) {
    ExactMatrix m = conn.action[a].transpose() * conn.metric + conn.metric * conn.action[a];
    if (!m.is_zero()) return false;
  }
  return true;
}

inline bool preserves_complex_structure(const FrameAlgebra& alg, const BismutConnection& conn) {
  const int N = conn.dim;
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b)
      for (int c = 0; c < N; ++c)
        if ((b < alg.n()) != (c < alg.n()) && !conn.action[a](c, b).is_zero()) return false;
  return true;
}

}  // namespace liebc
