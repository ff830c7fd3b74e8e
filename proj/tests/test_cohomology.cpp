#include <gtest/gtest.h>

#include "support.hpp"

using namespace liebc;
using namespace liebc::testing;

namespace {

// Dolbeault numbers of a compact rank-two group with an invariant complex
// structure: sum_{j<k} (st)^j (1 + s^2 t)(1 + t), k the largest exponent plus one.
Diamond dolbeault_oracle(int n, int k) {
  Diamond d;
  d.n = n;
  d.table.assign(n + 1, std::vector<std::size_t>(n + 1));
  for (int j = 0; j < k; ++j)
    for (auto [dp, dq] : {std::pair{0, 0}, {2, 1}})
      for (int e : {0, 1}) d.table[j + dp][j + dq + e] += 1;
  return d;
}

// Betti numbers of (1 + t^a)(1 + t^b).
std::vector<std::size_t> betti_oracle(int a, int b) {
  std::vector<std::size_t> v(a + b + 1);
  v[0] += 1;
  v[a] += 1;
  v[b] += 1;
  v[a + b] += 1;
  return v;
}

struct Case {
  const char* name;
  StructureKind kind;
  int exponent_bound;
};

const std::vector<Case> kSmall = {
    {"su3", StructureKind::standard, 3}, {"spin5", StructureKind::plus, 4}, {"spin5", StructureKind::minus, 4}};

std::map<std::pair<int, int>, std::vector<std::vector<FieldElement>>> coordinates_by_bidegree(
    const Bicomplex& bc, const std::vector<Form>& forms, CohomologyKind kind) {
  std::map<std::pair<int, int>, std::vector<std::vector<FieldElement>>> out;
  for (const auto& f : forms) out[*f.bidegree()].push_back(class_of(bc, f, kind).coordinates);
  return out;
}

std::size_t coordinate_rank(const std::vector<std::vector<FieldElement>>& rows) {
  if (rows.empty() || rows[0].empty()) return 0;
  ExactMatrix m(rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  return rank(m);
}

}  // namespace

TEST(Dolbeault, MatchesOracle) {
  for (const auto& c : kSmall) {
    const auto& bc = *model(c.name, c.kind).bc;
    EXPECT_EQ(diamond(bc, CohomologyKind::dolbeault), dolbeault_oracle(bc.n(), c.exponent_bound)) << c.name;
  }
}

TEST(Dolbeault, G2MatchesOracle) {
  const auto& bc = *model("g2", StructureKind::minus).bc;
  EXPECT_EQ(diamond(bc, CohomologyKind::dolbeault), dolbeault_oracle(7, 6));
}

TEST(Goldens, SmallModelsMatch) {
  for (const auto& c : kSmall)
    for (auto kind : {CohomologyKind::dolbeault, CohomologyKind::bott_chern}) {
      auto golden = load_golden(data_dir(), c.name, kind);
      ASSERT_TRUE(golden.has_value()) << c.name << " " << kind_name(kind);
      EXPECT_EQ(diamond(*model(c.name, c.kind).bc, kind), golden->diamond) << c.name << " " << kind_name(kind);
    }
}

TEST(Goldens, DolbeaultGoldensAgreeWithOracle) {
  for (auto [name, n, k] : {std::tuple{"su3", 4, 3}, {"spin5", 5, 4}, {"g2", 7, 6}}) {
    auto golden = load_golden(data_dir(), name, CohomologyKind::dolbeault);
    ASSERT_TRUE(golden.has_value());
    EXPECT_EQ(golden->diamond, dolbeault_oracle(n, k)) << name;
  }
}

TEST(DeRham, BettiNumbers) {
  EXPECT_EQ(diamond(*model("su3").bc, CohomologyKind::de_rham).table[0], betti_oracle(3, 5));
  EXPECT_EQ(diamond(*model("spin5", StructureKind::plus).bc, CohomologyKind::de_rham).table[0], betti_oracle(3, 7));
}

TEST(Symmetries, DualityConjugationEuler) {
  for (const auto& c : kSmall) {
    const auto& bc = *model(c.name, c.kind).bc;
    const int n = bc.n();
    auto bcd = diamond(bc, CohomologyKind::bott_chern);
    auto ad = diamond(bc, CohomologyKind::aeppli);
    auto dd = diamond(bc, CohomologyKind::dolbeault);
    for (int p = 0; p <= n; ++p)
      for (int q = 0; q <= n; ++q) {
        EXPECT_EQ(bcd.table[p][q], ad.table[n - q][n - p]) << c.name;
        EXPECT_EQ(bcd.table[p][q], bcd.table[q][p]) << c.name;
        // h_BC + h_A >= h_delbar + h_del holds for any finite double complex
        EXPECT_GE(bcd.table[p][q] + ad.table[p][q], dd.table[p][q] + dd.table[q][p]) << c.name;
      }
    EXPECT_EQ(euler_characteristic(dd), 0) << c.name;
  }
}

TEST(Duality, StarredRepresentativesAreAeppliIndependent) {
  for (const auto& c : kSmall) {
    const Model& mod = model(c.name, c.kind);
    auto rep = duality_check(*mod.bc, mod.bf, true);
    EXPECT_TRUE(rep.pass) << c.name << " (" << rep.p << "," << rep.q << "): " << rep.reason;
  }
}

TEST(Representatives, AreClosedForTheirKind) {
  for (const auto& c : kSmall) {
    const auto& bc = *model(c.name, c.kind).bc;
    for (int p = 0; p <= bc.n(); ++p)
      for (int q = 0; q <= bc.n(); ++q) {
        for (const auto& r : bott_chern(bc, p, q).representatives) {
          EXPECT_TRUE(bc.apply_del(r).is_zero());
          EXPECT_TRUE(bc.apply_delbar(r).is_zero());
        }
        for (const auto& r : dolbeault(bc, p, q).representatives) EXPECT_TRUE(bc.apply_delbar(r).is_zero());
        for (const auto& r : aeppli(bc, p, q).representatives)
          EXPECT_TRUE(bc.apply_del(bc.apply_delbar(r)).is_zero());
      }
  }
}

TEST(Representatives, ClassifyToUnitVectors) {
  const auto& bc = *model("spin5", StructureKind::minus).bc;
  for (auto kind : {CohomologyKind::dolbeault, CohomologyKind::bott_chern, CohomologyKind::aeppli}) {
    CohomologyClassifier cls(bc, kind, 2, 2);
    const auto& reps = cls.result().representatives;
    for (std::size_t k = 0; k < reps.size(); ++k) {
      auto v = cls.classify(reps[k]);
      ASSERT_TRUE(v.closed);
      for (std::size_t j = 0; j < reps.size(); ++j) EXPECT_EQ(v.coordinates[j], FieldElement(j == k ? 1 : 0));
    }
  }
}

TEST(ClassOf, BiinvariantFormInAeppli) {
  for (auto [name, kind] : {std::pair{"su3", StructureKind::standard}, {"spin5", StructureKind::plus},
                            {"spin5", StructureKind::minus}, {"g2", StructureKind::plus}, {"g2", StructureKind::minus}}) {
    const Model& mod = model(name, kind);
    const auto& bc = *mod.bc;
    const int n = bc.n();
    EXPECT_EQ(aeppli(bc, 1, 1).dimension, 1u) << name;
    Form omega = kahler_form(mod.bf);
    auto v = class_of(bc, omega, CohomologyKind::aeppli);
    ASSERT_TRUE(v.closed) << name;
    EXPECT_FALSE(v.exact()) << name;

    // adding del(0,1) + delbar(1,0) leaves the class alone
    Form shifted = omega + bc.apply_del(word(n, "", "1", 3)) + bc.apply_delbar(word(n, "2", "", I()));
    EXPECT_EQ(class_of(bc, shifted, CohomologyKind::aeppli).coordinates, v.coordinates) << name;
  }
}

TEST(ClassOf, G2AeppliGeneratorIsBiinvariantClass) {
  const Model& mod = model("g2", StructureKind::plus);
  // the printed generator, moved to our conjugate frame (signs eps_k on phibar^k)
  const std::array<int, 7> eps = {-1, -1, 1, -1, 1, -1, 1};
  const std::array<int, 7> printed = {3, 1, -3, 12, -36, 36, -12};
  Form generator(7);
  for (int k = 0; k < 7; ++k) generator.add(mono(std::to_string(k + 1), std::to_string(k + 1)), printed[k] * eps[k]);
  Form omega = kahler_form(mod.bf);
  FieldElement ratio = omega.coefficient(mono("1", "1")) / generator.coefficient(mono("1", "1"));
  EXPECT_EQ(omega, ratio * generator);
  auto v = class_of(*mod.bc, generator, CohomologyKind::aeppli);
  ASSERT_TRUE(v.closed);
  EXPECT_FALSE(v.exact());
}

TEST(ClassOf, NotClosedGivesObstruction) {
  const auto& bc = *model("su3").bc;
  Form x = word(4, "1", "");
  auto v = class_of(bc, x, CohomologyKind::dolbeault);
  EXPECT_FALSE(v.closed);
  EXPECT_EQ(v.obstruction, bc.apply_delbar(x));
  EXPECT_TRUE(class_of(bc, word(4, "", "4"), CohomologyKind::dolbeault).closed);
}

TEST(ClassOf, MixedBidegreeIsRejected) {
  const auto& bc = *model("su3").bc;
  try {
    (void)class_of(bc, word(4, "1", "") + word(4, "", "1"), CohomologyKind::bott_chern);
    FAIL() << "expected a throw";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::bidegree_mismatch);
  }
}

TEST(Generators, Su3BottChernListIsClosedAndIndependent) {
  const auto& bc = *model("su3").bc;
  auto gens = su3_bott_chern_generators();
  for (std::size_t k = 0; k < gens.size(); ++k) {
    EXPECT_TRUE(bc.apply_del(gens[k]).is_zero()) << "generator " << k + 1;
    EXPECT_TRUE(bc.apply_delbar(gens[k]).is_zero()) << "generator " << k + 1;
  }
  auto diamond_bc = diamond(bc, CohomologyKind::bott_chern);
  std::size_t listed = 1;  // the constant
  for (const auto& [pq, rows] : coordinates_by_bidegree(bc, gens, CohomologyKind::bott_chern)) {
    EXPECT_EQ(coordinate_rank(rows), rows.size()) << "(" << pq.first << "," << pq.second << ")";
    EXPECT_EQ(rows.size(), diamond_bc.table[pq.first][pq.second]) << "(" << pq.first << "," << pq.second << ")";
    listed += rows.size();
  }
  std::size_t total = 0;
  for (const auto& row : diamond_bc.table)
    for (auto h : row) total += h;
  EXPECT_EQ(listed, total);
}

class Spin5Generators : public ::testing::TestWithParam<int> {};

TEST_P(Spin5Generators, DolbeaultClassesAreNonzero) {
  const int s = GetParam(), n = 5;
  const FieldElement sg = s;
  const auto& bc = *model("spin5", s > 0 ? StructureKind::plus : StructureKind::minus).bc;
  const std::vector<Form> gens = {
      word(n, "", "1"),
      form(n, {{"2", "2", 1}, {"3", "3", 1}, {"4", "4", 1}}),
      form(n, {{"12", "2", 1},
               {"13", "3", 1},
               {"13", "4", -sg},
               {"14", "3", sg},
               {"14", "4", 1},
               {"15", "5", sg * I()},
               {"25", "3", -I()},
               {"25", "4", 1},
               {"35", "2", I()},
               {"45", "2", -1}}),
  };
  for (const auto& g : gens) {
    auto v = class_of(bc, g, CohomologyKind::dolbeault);
    ASSERT_TRUE(v.closed) << g.to_string();
    EXPECT_FALSE(v.exact()) << g.to_string();
  }
}

INSTANTIATE_TEST_SUITE_P(Signs, Spin5Generators, ::testing::Values(1, -1));

TEST(Permutation, EnumerationOrderDoesNotMatter) {
  const auto& base = *model("su3").bc;
  auto gens = su3_bott_chern_generators();
  auto reference = coordinates_by_bidegree(base, gens, CohomologyKind::bott_chern);
  for (std::uint64_t seed : {1, 2, 3}) {
    Bicomplex shuffled(base.equations(), seed);
    for (auto kind : {CohomologyKind::dolbeault, CohomologyKind::bott_chern, CohomologyKind::aeppli})
      EXPECT_EQ(diamond(shuffled, kind), diamond(base, kind)) << seed;
    EXPECT_EQ(coordinates_by_bidegree(shuffled, gens, CohomologyKind::bott_chern), reference) << seed;
  }
}

TEST(Diamond, RowsRoundTrip) {
  auto golden = load_golden(data_dir(), "spin5", CohomologyKind::bott_chern);
  ASSERT_TRUE(golden.has_value());
  auto again = diamond_from_json(to_json(golden->diamond));
  EXPECT_EQ(again, golden->diamond);
  EXPECT_THROW(diamond_from_rows(CohomologyKind::dolbeault, "x", 2, {{1}, {0, 0}}), Error);
}
