#pragma once

// Pointwise Hermitian pairing of invariant forms induced by a metric, and the
// C-linear Hodge star defined by x ^ *conj(y) = <x, y> vol with vol = omega^n / n!.

#include <map>
#include <utility>

#include "liebc/bicomplex.hpp"
#include "liebc/metric.hpp"

namespace liebc {

namespace detail {

inline std::vector<int> bits(std::uint32_t mask) {
  std::vector<int> out;
  for (int k = 0; mask; ++k, mask >>= 1)
    if (mask & 1u) out.push_back(k);
  return out;
}

inline FieldElement submatrix_det(const ExactMatrix& g, std::uint32_t rows, std::uint32_t cols) {
  auto r = bits(rows), c = bits(cols);
  ExactMatrix sub(r.size(), c.size());
  for (std::size_t i = 0; i < r.size(); ++i)
    for (std::size_t j = 0; j < c.size(); ++j) sub(i, j) = g(r[i], c[j]);
  return r.empty() ? FieldElement::one() : determinant(sub);
}

inline std::complex<double> submatrix_det(const ComplexMatrix& g, std::uint32_t rows, std::uint32_t cols) {
  auto r = bits(rows), c = bits(cols);
  if (r.empty()) return 1.0;
  ComplexMatrix sub(r.size(), c.size());
  for (std::size_t i = 0; i < r.size(); ++i)
    for (std::size_t j = 0; j < c.size(); ++j) sub(i, j) = g(r[i], c[j]);
  return sub.determinant();
}

inline FieldElement conj_of(const FieldElement& x) { return x.conj(); }
inline std::complex<double> conj_of(const std::complex<double>& x) { return std::conj(x); }

// <phi^I ^ phibar^J, phi^K ^ phibar^L> = det G[I,K] * conj(det G[J,L]), memoized on index sets.
template <class Mat>
class MonomialPairing {
 public:
  using Scalar = decltype(submatrix_det(std::declval<const Mat&>(), 0u, 0u));
  explicit MonomialPairing(Mat g) : g_(std::move(g)) {}

  Scalar operator()(const Monomial& x, const Monomial& y) {
    if (x.p() != y.p() || x.q() != y.q()) return Scalar{};
    return minor(x.holo, y.holo) * conj_of(minor(x.anti, y.anti));
  }

 private:
  Scalar minor(std::uint32_t r, std::uint32_t c) {
    auto [it, fresh] = cache_.try_emplace({r, c});
    if (fresh) it->second = submatrix_det(g_, r, c);
    return it->second;
  }
  Mat g_;
  std::map<std::pair<std::uint32_t, std::uint32_t>, Scalar> cache_;
};

}  // namespace detail

// M_ij = <basis_i, basis_j> on the (p,q) basis of bc.
inline ExactMatrix monomial_gram(const Bicomplex& bc, const ExactMatrix& h, int p, int q) {
  detail::MonomialPairing<ExactMatrix> pair(coframe_gram(h));
  const auto& b = bc.basis(p, q);
  ExactMatrix m(b.size(), b.size());
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) m(i, j) = pair(b[i], b[j]);
  return m;
}

inline ComplexMatrix monomial_gram(const Bicomplex& bc, const ComplexMatrix& h, int p, int q) {
  detail::MonomialPairing<ComplexMatrix> pair(coframe_gram(h));
  const auto& b = bc.basis(p, q);
  ComplexMatrix m(b.size(), b.size());
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) m(i, j) = pair(b[i], b[j]);
  return m;
}

// <x, y>, linear in x and conjugate-linear in y.
inline FieldElement pairing(const ExactMatrix& h, const Form& x, const Form& y) {
  x.check_n(y);
  detail::MonomialPairing<ExactMatrix> pair(coframe_gram(h));
  FieldElement out;
  for (const auto& [mx, cx] : x.terms())
    for (const auto& [my, cy] : y.terms()) {
      FieldElement v = pair(mx, my);
      if (!v.is_zero()) out += cx * cy.conj() * v;
    }
  return out;
}

// vol = omega^n / n! = volume_coefficient * phi^{1..n} ^ phibar^{1..n}.
inline FieldElement volume_coefficient(const ExactMatrix& h) {
  const int n = static_cast<int>(h.rows());
  FieldElement c = determinant(h);
  FieldElement half_i(0, 0, Rational(1, 2), 0);
  for (int k = 0; k < n; ++k) c = c * half_i;
  return (n * (n - 1) / 2) % 2 ? -c : c;
}

inline Form volume_form(const ExactMatrix& h) {
  const int n = static_cast<int>(h.rows());
  std::uint32_t all = (1u << n) - 1;
  return Form(n, Monomial{all, all}, volume_coefficient(h));
}

// C-linear star: (p,q) -> (n-q, n-p).
inline Form hodge_star(const ExactMatrix& h, const Form& x) {
  const int n = static_cast<int>(h.rows());
  if (x.n() != n) throw Error(ErrorCode::mismatched_n, "form and metric have different n");
  detail::MonomialPairing<ExactMatrix> pair(coframe_gram(h));
  const FieldElement v0 = volume_coefficient(h);
  const std::uint32_t all = (1u << n) - 1;
  Form y = conjugate(x);
  Form out(n);
  std::map<std::pair<int, int>, std::vector<Monomial>> by_degree;
  for (const auto& [m, c] : y.terms()) by_degree[{m.p(), m.q()}];
  for (auto& [pq, list] : by_degree) {
    for (const auto& alpha : canonical_monomials(n, pq.first, pq.second)) {
      FieldElement s;
      for (const auto& [m, c] : y.terms())
        if (m.p() == pq.first && m.q() == pq.second) {
          FieldElement v = pair(alpha, m);
          if (!v.is_zero()) s += c.conj() * v;
        }
      if (s.is_zero()) continue;
      Monomial comp{all & ~alpha.holo, all & ~alpha.anti};
      int sign = wedge_sign(alpha, comp);
      out.add(comp, sign > 0 ? v0 * s : -(v0 * s));
    }
  }
  return out;
}

}  // namespace liebc
