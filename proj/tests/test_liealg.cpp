#include <gtest/gtest.h>

#include <Eigen/Dense>

#include "support.hpp"

using namespace liebc;
using namespace liebc::testing;

namespace {

using CMat = Eigen::Matrix3cd;
using cd = std::complex<double>;

std::array<CMat, 8> gell_mann() {
  std::array<CMat, 8> l;
  for (auto& m : l) m.setZero();
  const cd i(0, 1);
  l[0](0, 1) = l[0](1, 0) = 1;
  l[1](0, 1) = -i;
  l[1](1, 0) = i;
  l[2](0, 0) = 1;
  l[2](1, 1) = -1;
  l[3](0, 2) = l[3](2, 0) = 1;
  l[4](0, 2) = -i;
  l[4](2, 0) = i;
  l[5](1, 2) = l[5](2, 1) = 1;
  l[6](1, 2) = -i;
  l[6](2, 1) = i;
  l[7](0, 0) = l[7](1, 1) = 1 / std::sqrt(3.0);
  l[7](2, 2) = -2 / std::sqrt(3.0);
  return l;
}

Eigen::MatrixXd so5_generator(int i, int j) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(5, 5);
  a(i, j) = 1;
  a(j, i) = -1;
  return a;
}

const std::array<std::pair<int, int>, 10> kSo5Pairs = {
    {{0, 1}, {0, 2}, {1, 2}, {0, 3}, {1, 3}, {2, 3}, {0, 4}, {1, 4}, {2, 4}, {3, 4}}};

LieAlgebraModel su3_with_flipped_constant() {
  LieAlgebraModel m = *builtin_model("su3");
  m.c(0, 1, 2) = -m.c(0, 1, 2);
  m.c(1, 0, 2) = -m.c(1, 0, 2);
  return m;
}

// Printed coframe for g2: conj(phi)^k there is eps_k times ours.
Form relabel_g2(const Form& printed) {
  const std::array<int, 7> eps = {-1, -1, 1, -1, 1, -1, 1};
  Form out(printed.n());
  for (const auto& [m, c] : printed.terms()) {
    int sign = 1;
    for (int b = 0; b < 7; ++b)
      if (m.anti >> b & 1u) sign *= eps[b];
    out.add(m, c * FieldElement(sign));
  }
  return out;
}

}  // namespace

TEST(Su3, BracketsMatchMatrixCommutators) {
  const auto m = builtin_model("su3");
  const auto l = gell_mann();
  const cd i(0, 1);
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b) {
      CMat x = i * l[a], y = i * l[b];
      CMat comm = x * y - y * x;
      for (int c = 0; c < 8; ++c) {
        cd coeff = (l[c] * comm).trace() / (2.0 * i);
        EXPECT_NEAR(std::abs(coeff - m->c(a, b, c).to_complex()), 0.0, 1e-12) << a << " " << b << " " << c;
      }
    }
}

TEST(Spin5, BracketsMatchMatrixCommutators) {
  const auto m = builtin_model("spin5");
  for (int a = 0; a < 10; ++a)
    for (int b = 0; b < 10; ++b) {
      auto x = so5_generator(kSo5Pairs[a].first, kSo5Pairs[a].second);
      auto y = so5_generator(kSo5Pairs[b].first, kSo5Pairs[b].second);
      Eigen::MatrixXd comm = x * y - y * x;
      for (int c = 0; c < 10; ++c) {
        double coeff = comm(kSo5Pairs[c].first, kSo5Pairs[c].second);
        EXPECT_EQ(m->c(a, b, c), FieldElement(static_cast<long long>(coeff))) << a << " " << b << " " << c;
      }
    }
}

TEST(G2, RootVectorBracket) {
  const auto m = builtin_model("g2");
  Vec expected(14);
  expected[0] = 8;
  expected[1] = 12;
  EXPECT_EQ(m->bracket(m->unit(5), m->unit(11)), expected);
}

TEST(LieAlgebra, BuiltinsSatisfyAxioms) {
  for (const auto& name : builtin_model_names()) {
    const auto m = builtin_model(name);
    EXPECT_TRUE(check_antisymmetry(*m)) << name;
    EXPECT_TRUE(check_jacobi(*m).pass) << name;
    EXPECT_TRUE(check_ad_invariance(*m)) << name;
    EXPECT_TRUE(check_torus_abelian(*m)) << name;
    EXPECT_TRUE(check_conjugation(*m)) << name;
  }
}

TEST(LieAlgebra, JacobiCatchesCorruptedConstant) {
  auto m = su3_with_flipped_constant();
  auto rep = check_jacobi(m);
  EXPECT_FALSE(rep.pass);
  ASSERT_FALSE(rep.violations.empty());
  // the reported triple really violates Jacobi
  const auto& [i, j, k] = rep.violations.front();
  Vec ei = m.unit(i), ej = m.unit(j), ek = m.unit(k);
  Vec sum = m.bracket(ei, m.bracket(ej, ek));
  Vec t = m.bracket(ej, m.bracket(ek, ei)), u = m.bracket(ek, m.bracket(ei, ej));
  bool zero = true;
  for (int x = 0; x < 8; ++x) zero = zero && (sum[x] + t[x] + u[x]).is_zero();
  EXPECT_FALSE(zero);
}

TEST(LieAlgebra, Su3KillingForm) {
  const auto m = builtin_model("su3");
  EXPECT_EQ(m->pairing(0, 0), Q(12));
  EXPECT_EQ(m->pairing(2, 7), Q(0));
  // -tr(ad_a ad_b) = sum c_ajk c_bjk for structure constants antisymmetric in all slots
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b) {
      FieldElement s;
      for (int j = 0; j < 8; ++j)
        for (int k = 0; k < 8; ++k) s += m->c(a, j, k) * m->c(b, j, k);
      EXPECT_EQ(m->pairing(a, b), s);
    }
}

TEST(LieAlgebra, KillingFormIsNegativeDefiniteOnRealFrames) {
  for (const std::string name : {"su3", "spin5"}) {
    const auto m = builtin_model(name);
    Eigen::MatrixXd k(m->dim, m->dim);
    for (int a = 0; a < m->dim; ++a)
      for (int b = 0; b < m->dim; ++b) k(a, b) = m->pairing(a, b).to_complex().real();
    // pairing = -tr(ad ad) is positive definite on a compact form
    EXPECT_GT(Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(k).eigenvalues().minCoeff(), 0) << name;
  }
}

TEST(Roots, Su3RootOfRaisingVector) {
  const auto m = builtin_model("su3");
  Vec v(8);
  v[0] = 1;
  v[1] = I();
  Vec w = m->bracket(m->unit(2), v);
  for (int k = 0; k < 8; ++k) EXPECT_EQ(w[k], Q(2) * I() * v[k]);
  EXPECT_EQ(m->bracket(m->unit(7), v), Vec(8));
  bool found = false;
  for (const auto& r : root_decomposition(*m))
    if (r.values == std::vector<FieldElement>{Q(2) * I(), Q(0)}) found = true;
  EXPECT_TRUE(found);
}

TEST(Roots, EigenvectorsAndCount) {
  for (const auto& name : builtin_model_names()) {
    const auto m = builtin_model(name);
    auto roots = root_decomposition(*m);
    ASSERT_EQ(static_cast<int>(roots.size()), m->dim - 2) << name;
    int positive = 0;
    for (const auto& r : roots) {
      positive += r.positive;
      for (std::size_t t = 0; t < m->torus.size(); ++t) {
        Vec image = m->bracket(m->unit(m->torus[t]), r.eigenvector);
        for (int k = 0; k < m->dim; ++k) EXPECT_EQ(image[k], r.values[t] * r.eigenvector[k]) << name;
      }
      bool has_negative = false;
      for (const auto& s : roots) {
        bool opposite = true;
        for (std::size_t t = 0; t < r.values.size(); ++t) opposite = opposite && (s.values[t] + r.values[t]).is_zero();
        has_negative = has_negative || (opposite && s.positive != r.positive);
      }
      EXPECT_TRUE(has_negative) << name;
    }
    EXPECT_EQ(positive, (m->dim - 2) / 2) << name;
  }
}

TEST(Structures, Su3ParameterChoices) {
  const auto m = builtin_model("su3");
  StructureSpec spec;
  spec.kind = StructureKind::parameter;
  spec.a = 1;
  spec.b = -1;
  EXPECT_FALSE(make_structure(m, spec).isotropic);
  spec.a = 0;
  EXPECT_TRUE(make_structure(m, spec).isotropic);
  spec.b = 0;
  try {
    (void)make_structure(m, spec);
    FAIL() << "expected a throw";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::degenerate_parameter);
  }
  EXPECT_THROW((void)make_structure(m, spec_of(StructureKind::plus)), Error);
}

TEST(Structures, ConjugateDifferentialsAgreeWithConjugation) {
  for (auto [name, kind] : {std::pair{"su3", StructureKind::standard}, {"spin5", StructureKind::plus},
                            {"spin5", StructureKind::minus}, {"g2", StructureKind::plus}, {"g2", StructureKind::minus}}) {
    const Model& mod = model(name, kind);
    auto se = derive_structure_equations(mod.cs);
    auto direct = derive_conjugate_differentials(mod.cs);
    for (int k = 0; k < se.n; ++k) EXPECT_EQ(direct[k], se.del_of_bar(k) + se.delbar_of_bar(k)) << name << " " << k;
  }
}

TEST(StructureEquations, Su3Table) {
  const int n = 4;
  auto se = derive_structure_equations(model("su3").cs);
  const FieldElement half = Q(1, 2);
  std::vector<Form> del = {
      form(n, {{"14", "", -I()}, {"23", "", I()}}),
      form(n, {{"24", "", -half * (S3() + I())}}),
      form(n, {{"34", "", half * (S3() - I())}}),
      Form(n),
  };
  std::vector<Form> delbar = {
      form(n, {{"1", "4", -I()}}),
      form(n, {{"1", "3", I()}, {"2", "4", half * (S3() - I())}}),
      form(n, {{"1", "2", -I()}, {"3", "4", -half * (S3() + I())}}),
      form(n, {{"1", "1", I()}, {"2", "2", half * (I() - S3())}, {"3", "3", half * (S3() + I())}}),
  };
  for (int k = 0; k < n; ++k) {
    EXPECT_EQ(se.del[k], del[k]) << "del phi^" << k + 1 << ": " << se.del[k].to_string();
    EXPECT_EQ(se.delbar[k], delbar[k]) << "delbar phi^" << k + 1 << ": " << se.delbar[k].to_string();
  }
}

class Spin5Table : public ::testing::TestWithParam<int> {};

TEST_P(Spin5Table, MatchesPublishedEquations) {
  const int s = GetParam(), n = 5;
  const FieldElement sg = s;
  auto se = derive_structure_equations(model("spin5", s > 0 ? StructureKind::plus : StructureKind::minus).cs);
  std::vector<Form> del = {
      Form(n),
      form(n, {{"12", "", I()}, {"35", "", -1}, {"45", "", -I()}}),
      form(n, {{"13", "", I()}, {"14", "", sg * I()}, {"25", "", 1}}),
      form(n, {{"13", "", -sg * I()}, {"14", "", I()}, {"25", "", I()}}),
      form(n, {{"15", "", -sg}}),
  };
  std::vector<Form> delbar = {
      form(n, {{"2", "2", I()}, {"3", "3", I()}, {"3", "4", sg * I()}, {"4", "3", -sg * I()}, {"4", "4", I()},
               {"5", "5", sg}}),
      form(n, {{"2", "1", -I()}, {"3", "5", -1}, {"4", "5", I()}}),
      form(n, {{"2", "5", 1}, {"3", "1", -I()}, {"4", "1", sg * I()}}),
      form(n, {{"2", "5", -I()}, {"3", "1", -sg * I()}, {"4", "1", -I()}}),
      form(n, {{"2", "3", -1}, {"2", "4", I()}, {"3", "2", 1}, {"4", "2", -I()}, {"5", "1", -sg}}),
  };
  for (int k = 0; k < n; ++k) {
    EXPECT_EQ(se.del[k], del[k]) << "del phi^" << k + 1 << ": " << se.del[k].to_string();
    EXPECT_EQ(se.delbar[k], delbar[k]) << "delbar phi^" << k + 1 << ": " << se.delbar[k].to_string();
  }
}

INSTANTIATE_TEST_SUITE_P(Signs, Spin5Table, ::testing::Values(1, -1));

class G2Table : public ::testing::TestWithParam<int> {
 protected:
  static std::vector<Form> published_delbar(int s) {
    const int n = 7;
    const FieldElement sg = s, is3 = FieldElement::i_sqrt3();
    return {
        form(n, {{"2", "3", -1}, {"3", "4", 4}, {"4", "5", -12}, {"7", "1", -2}}),
        form(n, {{"2", "7", sg * is3 - Q(3)}, {"3", "1", -3}, {"6", "5", -36}}),
        form(n, {{"3", "7", sg * is3 - Q(1)}, {"4", "1", -4}, {"6", "4", -12}}),
        form(n, {{"4", "7", sg * is3 + Q(1)}, {"5", "1", -3}, {"6", "3", -3}}),
        form(n, {{"5", "7", sg * is3 + Q(3)}, {"6", "2", -1}}),
        form(n, {{"6", "7", Q(2) * sg * is3}}),
        form(n, {{"1", "1", Q(1, 2)},
                 {"2", "2", Q(1, 12) * sg * is3 - Q(1, 4)},
                 {"3", "3", Q(-1, 4) * sg * is3 + Q(1, 4)},
                 {"4", "4", sg * is3 + Q(1)},
                 {"5", "5", Q(-3) * sg * is3 - Q(9)},
                 {"6", "6", Q(6) * sg * is3}}),
    };
  }
};

TEST_P(G2Table, MatchesPublishedEquations) {
  const int s = GetParam(), n = 7;
  const FieldElement sg = s, is3 = FieldElement::i_sqrt3();
  auto se = derive_structure_equations(model("g2", s > 0 ? StructureKind::plus : StructureKind::minus).cs);
  std::vector<Form> del = {
      form(n, {{"17", "", -2}}),
      form(n, {{"27", "", sg * is3 + Q(3)}}),
      form(n, {{"12", "", 1}, {"37", "", sg * is3 + Q(1)}}),
      form(n, {{"13", "", 1}, {"47", "", sg * is3 - Q(1)}}),
      form(n, {{"14", "", 1}, {"57", "", sg * is3 - Q(3)}}),
      form(n, {{"25", "", 1}, {"34", "", -1}, {"67", "", Q(2) * sg * is3}}),
      Form(n),
  };
  auto delbar = published_delbar(s);
  for (int k = 0; k < n; ++k) {
    EXPECT_EQ(se.del[k], del[k]) << "del phi^" << k + 1 << ": " << se.del[k].to_string();
    if (k == 0) continue;  // see FirstDelbarLineIsMisprinted
    EXPECT_EQ(se.delbar[k], relabel_g2(delbar[k])) << "delbar phi^" << k + 1 << ": " << se.delbar[k].to_string();
  }
}

// The printed delbar phi^1 is inconsistent with d^2 = 0 when combined with the
// rest of the table; ours differs from it and is consistent.
TEST_P(G2Table, FirstDelbarLineIsMisprinted) {
  const int s = GetParam();
  const Model& mod = model("g2", s > 0 ? StructureKind::plus : StructureKind::minus);
  auto se = derive_structure_equations(mod.cs);
  Form printed = relabel_g2(published_delbar(s)[0]);
  EXPECT_NE(se.delbar[0], printed);

  StructureEquations patched = se;
  patched.delbar[0] = printed;
  EXPECT_FALSE(verify_bicomplex(Bicomplex(patched)).pass);
  EXPECT_TRUE(verify_bicomplex(*mod.bc).pass);
}

INSTANTIATE_TEST_SUITE_P(Signs, G2Table, ::testing::Values(1, -1));
