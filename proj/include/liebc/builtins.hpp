#pragma once

// The rank-two compact simple algebras su(3), so(5) = spin(5) and g2, and their
// isotropic complex structures in the normalizations used by the tables.

#include <array>
#include <memory>
#include <string>
#include <tuple>

#include "liebc/complex_structure.hpp"

namespace liebc {

namespace detail {

inline FieldElement half_sqrt3() { return FieldElement(0, Rational(1, 2), 0, 0); }

inline std::shared_ptr<LieAlgebraModel> make_su3() {
  auto m = std::make_shared<LieAlgebraModel>("su3", 8);
  // lambda^{ijk}, 1-based, totally antisymmetric; [e_i, e_j] = 2 sum_k lambda^{ijk} e_k.
  const std::vector<std::tuple<int, int, int, FieldElement>> lambda = {
      {1, 2, 3, -1},
      {1, 4, 7, Rational(-1, 2)},
      {1, 5, 6, Rational(1, 2)},
      {2, 4, 6, Rational(-1, 2)},
      {2, 5, 7, Rational(-1, 2)},
      {3, 4, 5, Rational(-1, 2)},
      {3, 6, 7, Rational(1, 2)},
      {4, 5, 8, -half_sqrt3()},
      {6, 7, 8, -half_sqrt3()},
  };
  for (const auto& [i, j, k, v] : lambda) {
    const std::array<std::array<int, 3>, 6> perms = {
        {{i, j, k}, {j, k, i}, {k, i, j}, {j, i, k}, {i, k, j}, {k, j, i}}};
    for (int p = 0; p < 6; ++p) {
      FieldElement c = FieldElement(2) * v;
      m->c(perms[p][0] - 1, perms[p][1] - 1, perms[p][2] - 1) = p < 3 ? c : -c;
    }
  }
  m->torus = {2, 7};
  m->chamber = {1, 0};
  m->pairing = killing_pairing(*m);
  return m;
}

inline std::shared_ptr<LieAlgebraModel> make_spin5() {
  auto m = std::make_shared<LieAlgebraModel>("spin5", 10);
  // e_k = A_{i,j} for the pairs below (1-based matrix indices).
  const std::array<std::pair<int, int>, 10> pairs = {
      {{1, 2}, {1, 3}, {2, 3}, {1, 4}, {2, 4}, {3, 4}, {1, 5}, {2, 5}, {3, 5}, {4, 5}}};
  auto index_of = [&](int i, int j) -> std::pair<int, int> {  // (frame index, sign)
    if (i == j) return {-1, 0};
    int sign = 1;
    if (i > j) {
      std::swap(i, j);
      sign = -1;
    }
    for (int k = 0; k < 10; ++k)
      if (pairs[k] == std::pair{i, j}) return {k, sign};
    return {-1, 0};
  };
  for (int x = 0; x < 10; ++x)
    for (int y = 0; y < 10; ++y) {
      auto [i, j] = pairs[x];
      auto [mm, nn] = pairs[y];
      // [A_ij, A_mn] = d_mj A_in - d_nj A_im - d_mi A_jn + d_ni A_jm
      std::vector<std::tuple<bool, int, int, int>> terms = {
          {mm == j, i, nn, 1}, {nn == j, i, mm, -1}, {mm == i, j, nn, -1}, {nn == i, j, mm, 1}};
      for (const auto& [on, r, s, sign] : terms) {
        if (!on) continue;
        auto [k, orient] = index_of(r, s);
        if (k >= 0) m->c(x, y, k) += FieldElement(sign * orient);
      }
    }
  m->torus = {0, 9};
  m->chamber = {2, 1};
  m->pairing = killing_pairing(*m);
  return m;
}

// Complexified frame: 0 = h1, 1 = h2, 2..7 = phi_1..phi_6, 8..13 = conj-root vectors phibar_1..phibar_6.
inline std::shared_ptr<LieAlgebraModel> make_g2() {
  auto m = std::make_shared<LieAlgebraModel>("g2", 14);
  auto P = [](int k) { return 1 + k; };
  auto Q = [](int k) { return 7 + k; };
  const int H1 = 0, H2 = 1;
  const std::array<int, 6> w1 = {2, -3, -1, 1, 3, 0};
  const std::array<int, 6> w2 = {-1, 2, 1, 0, -1, 1};
  for (int k = 1; k <= 6; ++k) {
    m->set_bracket(H1, P(k), {{P(k), w1[k - 1]}});
    m->set_bracket(H1, Q(k), {{Q(k), -w1[k - 1]}});
    m->set_bracket(H2, P(k), {{P(k), w2[k - 1]}});
    m->set_bracket(H2, Q(k), {{Q(k), -w2[k - 1]}});
  }
  using T = std::vector<std::pair<int, FieldElement>>;
  const std::vector<std::tuple<int, int, T>> table = {
      {P(1), Q(1), {{H1, 1}}},           {P(1), P(2), {{P(3), 1}}},          {P(1), P(3), {{P(4), 1}}},
      {P(1), Q(3), {{Q(2), 3}}},         {P(1), P(4), {{P(5), 1}}},          {P(1), Q(4), {{Q(3), 4}}},
      {P(1), Q(5), {{Q(4), 3}}},         {Q(1), Q(2), {{Q(3), 1}}},          {Q(1), P(3), {{P(2), 3}}},
      {Q(1), Q(3), {{Q(4), 1}}},         {Q(1), P(4), {{P(3), 4}}},          {Q(1), Q(4), {{Q(5), 1}}},
      {Q(1), P(5), {{P(4), 3}}},         {P(2), Q(2), {{H2, 1}}},            {P(2), Q(3), {{Q(1), -1}}},
      {P(2), P(5), {{P(6), 1}}},         {P(2), Q(6), {{Q(5), 1}}},          {Q(2), P(3), {{P(1), -1}}},
      {Q(2), Q(5), {{Q(6), 1}}},         {Q(2), P(6), {{P(5), 1}}},          {P(3), Q(3), {{H1, -1}, {H2, -3}}},
      {P(3), P(4), {{P(6), -1}}},        {P(3), Q(4), {{Q(1), 4}}},          {P(3), Q(6), {{Q(4), 3}}},
      {Q(3), P(4), {{P(1), 4}}},         {Q(3), Q(4), {{Q(6), -1}}},         {Q(3), P(6), {{P(4), 3}}},
      {P(4), Q(4), {{H1, 8}, {H2, 12}}}, {P(4), Q(5), {{Q(1), -12}}},        {P(4), Q(6), {{Q(3), 12}}},
      {Q(4), P(5), {{P(1), -12}}},       {Q(4), P(6), {{P(3), 12}}},         {P(5), Q(5), {{H1, -36}, {H2, -36}}},
      {P(5), Q(6), {{Q(2), 36}}},        {Q(5), P(6), {{P(2), 36}}},         {P(6), Q(6), {{H1, 36}, {H2, 72}}},
  };
  for (const auto& [x, y, terms] : table) m->set_bracket(x, y, terms);

  // Compact real form: h -> -h, phi_k <-> eps_k phibar_k.
  const std::array<int, 6> eps = {-1, -1, 1, -1, 1, -1};
  m->conjugation = DenseMatrix<FieldElement>(14, 14);
  m->conjugation(H1, H1) = -1;
  m->conjugation(H2, H2) = -1;
  for (int k = 1; k <= 6; ++k) {
    m->conjugation(Q(k), P(k)) = eps[k - 1];
    m->conjugation(P(k), Q(k)) = eps[k - 1];
  }
  m->labels = {"h1", "h2"};
  for (int k = 1; k <= 6; ++k) m->labels.push_back("phi" + std::to_string(k));
  for (int k = 1; k <= 6; ++k) m->labels.push_back("phibar" + std::to_string(k));
  m->torus = {H1, H2};
  m->chamber = {4, 7};
  m->pairing = killing_pairing(*m);
  return m;
}

}  // namespace detail

inline std::shared_ptr<const LieAlgebraModel> builtin_model(const std::string& name) {
  if (name == "su3") return detail::make_su3();
  if (name == "spin5") return detail::make_spin5();
  if (name == "g2") return detail::make_g2();
  throw Error(ErrorCode::unknown_model, "unknown model '" + name + "' (expected su3, spin5 or g2)");
}

inline std::vector<std::string> builtin_model_names() { return {"su3", "spin5", "g2"}; }

enum class StructureKind { standard, plus, minus, parameter };

struct StructureSpec {
  StructureKind kind = StructureKind::standard;
  FieldElement a, b;  // used by StructureKind::parameter
};

namespace detail {

inline std::vector<RootDatum> select_roots(const std::vector<RootDatum>& roots, bool positive) {
  std::vector<RootDatum> out;
  for (const auto& r : roots)
    if (r.positive == positive) out.push_back(r);
  return out;
}

inline Vec combo(int dim, std::initializer_list<std::pair<int, FieldElement>> terms) {
  Vec v(dim);
  for (const auto& [i, c] : terms) v[i] += c;
  return v;
}

}  // namespace detail

// Builds the complex structure named by spec. Builtin isotropic structures come
// with the frame normalization of the published structure equations; parameter
// choices and file models use the plain Samelson frame.
inline ComplexStructureChoice make_structure(std::shared_ptr<const LieAlgebraModel> model, const StructureSpec& spec) {
  const std::string& name = model->name;
  const bool builtin = name == "su3" || name == "spin5" || name == "g2";
  const FieldElement I = FieldElement::i();
  auto roots = root_decomposition(*model);
  auto chosen = detail::select_roots(roots, name != "g2");

  if (spec.kind == StructureKind::parameter || !builtin) {
    FieldElement a = spec.a, b = spec.b;
    if (spec.kind != StructureKind::parameter) {
      a = 0;
      b = spec.kind == StructureKind::minus ? -1 : 1;
    }
    auto cs = samelson_structure(model, chosen, a, b);
    cs.label = "(a,b)=(" + a.to_string() + "," + b.to_string() + ")";
    return cs;
  }

  if (name == "su3") {
    if (spec.kind != StructureKind::standard)
      throw Error(ErrorCode::invalid_argument, "su3 has a single isotropic structure; omit --structure");
    auto cs = samelson_structure(model, chosen, 0, -1);
    const int d = 8;
    cs = reframe(cs,
                 {detail::combo(d, {{0, 1}, {1, -I}}), detail::combo(d, {{3, 1}, {4, -I}}),
                  detail::combo(d, {{5, 1}, {6, I}}), detail::combo(d, {{2, 1}, {7, -I}})},
                 {2, 2, 2, 2}, 3);
    cs.metric_scale = 6;
    cs.label = "J_{0,-1}";
    return cs;
  }

  const bool plus = spec.kind != StructureKind::minus;
  const FieldElement sgn = plus ? 1 : -1;
  if (name == "spin5") {
    auto cs = samelson_structure(model, chosen, 0, sgn);
    const int d = 10;
    cs = reframe(cs,
                 {detail::combo(d, {{0, 1}, {9, sgn * I}}), detail::combo(d, {{1, 1}, {2, -I}}),
                  detail::combo(d, {{3, 1}, {4, -I}}), detail::combo(d, {{6, 1}, {7, -I}}),
                  detail::combo(d, {{5, 1}, {8, -I}})},
                 {1, 1, -1, 1, 1}, 0);
    cs.metric_scale = 12;
    cs.label = plus ? "J_+" : "J_-";
    return cs;
  }

  // g2: s is spanned by the negative root vectors and the torus vector, so that
  // the (1,0)-frame is phi_1..phi_6 together with phi_7 = (1 -+ sqrt3 i) h1 -+ 2 sqrt3 i h2.
  const FieldElement s3 = FieldElement::sqrt3();
  auto cs = samelson_structure(model, chosen, -(sgn * s3), -(sgn * FieldElement(2) * s3));
  std::vector<Vec> frame;
  for (int k = 0; k < 6; ++k) frame.push_back(model->unit(2 + k));
  frame.push_back(detail::combo(14, {{0, FieldElement(1) - sgn * s3 * I}, {1, -(sgn * FieldElement(2) * s3 * I)}}));
  cs = reframe(cs, frame, std::vector<FieldElement>(7, FieldElement(-1)), 6);
  cs.metric_scale = 4;
  cs.label = plus ? "J_+" : "J_-";
  return cs;
}

}  // namespace liebc
