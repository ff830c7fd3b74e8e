#pragma once

// Samelson complex structures on an even-dimensional compact Lie algebra and
// the structure equations of the induced invariant coframe.
//
// Convention: the (1,0)-tangent space is the conjugate of the Samelson
// subalgebra s, so the (1,0)-frame u_k spans conj(s). The coframe is
// phi^k = s_k * (u_k)^*, dual to [u_1..u_n, conj(u_1)..conj(u_n)].

#include <memory>
#include <string>
#include <vector>

#include "liebc/forms.hpp"
#include "liebc/lie_algebra.hpp"

namespace liebc {

struct ComplexStructureChoice {
  std::shared_ptr<const LieAlgebraModel> model;
  std::vector<RootDatum> positive_roots;
  FieldElement a, b;
  std::vector<Vec> samelson;        // basis of s
  std::vector<Vec> frame;           // (1,0)-frame u_1..u_n
  std::vector<FieldElement> scale;  // phi^k(u_k)
  int torus_slot = 0;               // frame index of the torus direction
  bool isotropic = false;
  FieldElement metric_scale = FieldElement::one();  // pairing divisor giving the bi-invariant metric
  std::string label;

  int n() const { return static_cast<int>(frame.size()); }
};

namespace detail {

inline DenseMatrix<FieldElement> columns(const std::vector<Vec>& vs, std::size_t dim) {
  DenseMatrix<FieldElement> m(dim, vs.size());
  for (std::size_t j = 0; j < vs.size(); ++j)
    for (std::size_t i = 0; i < dim; ++i) m(i, j) = vs[j][i];
  return m;
}

inline bool in_span(const std::vector<Vec>& basis, const Vec& v, std::size_t dim, std::size_t basis_rank) {
  auto vs = basis;
  vs.push_back(v);
  return rank(columns(vs, dim)) == basis_rank;
}

}  // namespace detail

// s = span{(1 - a i) H1 - b i H2} + sum of the chosen root spaces.
inline ComplexStructureChoice samelson_structure(std::shared_ptr<const LieAlgebraModel> model,
                                                 std::vector<RootDatum> roots, FieldElement a, FieldElement b) {
  const LieAlgebraModel& m = *model;
  if (b.is_zero()) throw Error(ErrorCode::degenerate_parameter, "torus parameter b must be nonzero");
  if (!a.is_real() || !b.is_real()) throw Error(ErrorCode::invalid_argument, "torus parameter (a, b) must be real");
  if (m.torus.size() != 2)
    throw Error(ErrorCode::invalid_argument, "the (a, b) parameterization needs a rank-two torus");
  if (m.dim % 2 != 0) throw Error(ErrorCode::invalid_argument, "odd-dimensional algebra has no complex structure");

  ComplexStructureChoice cs;
  cs.model = model;
  cs.positive_roots = roots;
  cs.a = a;
  cs.b = b;
  for (const auto& r : roots) cs.samelson.push_back(r.eigenvector);
  Vec torus_vec(m.dim);
  torus_vec[m.torus[0]] = FieldElement::one() - a * FieldElement::i();
  torus_vec[m.torus[1]] = -(b * FieldElement::i());
  cs.samelson.push_back(torus_vec);

  const std::size_t half = m.dim / 2;
  if (cs.samelson.size() != half)
    throw Error(ErrorCode::invalid_argument, "expected " + std::to_string(half - 1) + " roots, got " +
                                                 std::to_string(roots.size()));
  if (rank(detail::columns(cs.samelson, m.dim)) != half)
    throw Error(ErrorCode::invalid_argument, "chosen root vectors are linearly dependent");

  for (std::size_t i = 0; i < half; ++i)
    for (std::size_t j = i + 1; j < half; ++j)
      if (!detail::in_span(cs.samelson, m.bracket(cs.samelson[i], cs.samelson[j]), m.dim, half))
        throw Error(ErrorCode::non_subalgebra,
                    "bracket of generators " + std::to_string(i + 1) + " and " + std::to_string(j + 1) + " leaves s");

  std::vector<Vec> both = cs.samelson;
  for (const auto& v : cs.samelson) both.push_back(m.conj(v));
  if (rank(detail::columns(both, m.dim)) != static_cast<std::size_t>(m.dim))
    throw Error(ErrorCode::invalid_argument, "s and its conjugate do not span the complexification");

  for (const auto& v : cs.samelson) cs.frame.push_back(m.conj(v));
  cs.scale.assign(half, FieldElement::one());
  cs.torus_slot = static_cast<int>(half) - 1;

  cs.isotropic = true;
  for (std::size_t i = 0; i < half && cs.isotropic; ++i)
    for (std::size_t j = i; j < half; ++j)
      if (!m.pair(cs.samelson[i], cs.samelson[j]).is_zero()) {
        cs.isotropic = false;
        break;
      }
  return cs;
}

// Replaces the (1,0)-frame by another basis of conj(s), with coframe scales.
inline ComplexStructureChoice reframe(ComplexStructureChoice cs, std::vector<Vec> frame,
                                      std::vector<FieldElement> scale, int torus_slot) {
  const LieAlgebraModel& m = *cs.model;
  const std::size_t half = cs.samelson.size();
  if (frame.size() != half || scale.size() != half)
    throw Error(ErrorCode::invalid_argument, "frame size does not match the complex dimension");
  if (rank(detail::columns(frame, m.dim)) != half)
    throw Error(ErrorCode::invalid_argument, "replacement frame is linearly dependent");
  for (std::size_t k = 0; k < half; ++k) {
    if (scale[k].is_zero()) throw Error(ErrorCode::invalid_argument, "coframe scale must be nonzero");
    if (!detail::in_span(cs.samelson, m.conj(frame[k]), m.dim, half))
      throw Error(ErrorCode::invalid_argument, "frame vector " + std::to_string(k + 1) + " is not of type (1,0)");
  }
  cs.frame = std::move(frame);
  cs.scale = std::move(scale);
  cs.torus_slot = torus_slot;
  return cs;
}

// Frame with the coframe scale divided out, so that phi^k(unit_frame[k]) = 1.
inline std::vector<Vec> unit_frame(const ComplexStructureChoice& cs) {
  std::vector<Vec> out;
  for (int k = 0; k < cs.n(); ++k) {
    Vec v = cs.frame[k];
    FieldElement inv = cs.scale[k].inv();
    for (auto& x : v) x = x * inv;
    out.push_back(std::move(v));
  }
  return out;
}

struct StructureEquations {
  int n = 0;
  std::vector<Form> del;     // del phi^k, bidegree (2,0)
  std::vector<Form> delbar;  // delbar phi^k, bidegree (1,1)

  Form d(int k) const { return del[k] + delbar[k]; }
  Form del_of_bar(int k) const { return conjugate(delbar[k]); }
  Form delbar_of_bar(int k) const { return conjugate(del[k]); }
};

namespace detail {

struct Coframe {
  DenseMatrix<FieldElement> inverse;  // rows are psi^0..psi^{2n-1} in model coordinates
  std::vector<Vec> basis;             // w_0..w_{2n-1}
  std::vector<FieldElement> weight;   // phi-monomial scale of psi^a
};

inline Coframe coframe(const ComplexStructureChoice& cs) {
  const LieAlgebraModel& m = *cs.model;
  const int n = cs.n();
  Coframe c;
  c.basis = cs.frame;
  for (int k = 0; k < n; ++k) c.basis.push_back(m.conj(cs.frame[k]));
  auto inv = inverse(columns(c.basis, m.dim));
  if (!inv) throw Error(ErrorCode::invalid_argument, "frame and its conjugate are dependent");
  c.inverse = std::move(*inv);
  for (int k = 0; k < n; ++k) c.weight.push_back(cs.scale[k]);
  for (int k = 0; k < n; ++k) c.weight.push_back(cs.scale[k].conj());
  return c;
}

inline Monomial pair_monomial(int a, int b, int n) {
  Monomial mono;
  for (int x : {a, b}) {
    if (x < n)
      mono.holo |= 1u << x;
    else
      mono.anti |= 1u << (x - n);
  }
  return mono;
}

// d of the coframe element psi^target (0 <= target < 2n), written in the phi basis
// and scaled by weight[target].
inline Form d_coframe(const ComplexStructureChoice& cs, const Coframe& c, int target) {
  const LieAlgebraModel& m = *cs.model;
  const int n = cs.n();
  Form out(n);
  for (int a = 0; a < 2 * n; ++a)
    for (int b = a + 1; b < 2 * n; ++b) {
      Vec br = m.bracket(c.basis[a], c.basis[b]);
      FieldElement coord;
      for (int i = 0; i < m.dim; ++i)
        if (!br[i].is_zero() && !c.inverse(target, i).is_zero()) coord += c.inverse(target, i) * br[i];
      if (coord.is_zero()) continue;
      out.add(pair_monomial(a, b, n), -(c.weight[target] * coord) / (c.weight[a] * c.weight[b]));
    }
  return out;
}

}  // namespace detail

// d alpha(x, y) = -alpha([x, y]) on the coframe, split by bidegree.
inline StructureEquations derive_structure_equations(const ComplexStructureChoice& cs) {
  const int n = cs.n();
  if (n > kMaxGenerators) throw Error(ErrorCode::invalid_argument, "too many generators");
  auto c = detail::coframe(cs);
  StructureEquations se;
  se.n = n;
  for (int k = 0; k < n; ++k) {
    Form d = detail::d_coframe(cs, c, k);
    Form bad = d.component(0, 2);
    if (!bad.is_zero())
      throw Error(ErrorCode::integrability,
                  "d phi^" + std::to_string(k + 1) + " has a (0,2) part: " + bad.to_string());
    se.del.push_back(d.component(2, 0));
    se.delbar.push_back(d.component(1, 1));
  }
  return se;
}

// d(conj phi^k) computed directly from the brackets, without using conjugation of forms.
inline std::vector<Form> derive_conjugate_differentials(const ComplexStructureChoice& cs) {
  auto c = detail::coframe(cs);
  std::vector<Form> out;
  for (int k = 0; k < cs.n(); ++k) out.push_back(detail::d_coframe(cs, c, cs.n() + k));
  return out;
}

// Hermitian matrix H of the bi-invariant metric: omega = (i/2) sum H_ab phi^a ^ conj(phi^b).
inline DenseMatrix<FieldElement> biinvariant_metric(const ComplexStructureChoice& cs) {
  const LieAlgebraModel& m = *cs.model;
  auto u = unit_frame(cs);
  DenseMatrix<FieldElement> h(cs.n(), cs.n());
  FieldElement inv = cs.metric_scale.inv();
  for (int a = 0; a < cs.n(); ++a)
    for (int b = 0; b < cs.n(); ++b) h(a, b) = m.pair(u[a], m.conj(u[b])) * inv;
  return h;
}

}  // namespace liebc
