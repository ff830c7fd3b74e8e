#include <gtest/gtest.h>

#include <random>

#include <Eigen/Dense>

#include "support.hpp"

using namespace liebc;
using namespace liebc::testing;

namespace {

const std::vector<std::pair<std::string, StructureKind>> kModels = {
    {"su3", StructureKind::standard}, {"spin5", StructureKind::plus}, {"spin5", StructureKind::minus},
    {"g2", StructureKind::plus},      {"g2", StructureKind::minus}};

Form random_form(std::mt19937_64& rng, int n, int p, int q, int terms = 4) {
  auto basis = canonical_monomials(n, p, q);
  std::uniform_int_distribution<int> coeff(-3, 3);
  Form f(n);
  for (int t = 0; t < terms; ++t)
    f.add(basis[rng() % basis.size()], FieldElement(coeff(rng)) + FieldElement(coeff(rng)) * I());
  return f;
}

long long binomial(int n, int k) {
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

TEST(Forms, WedgeSigns) {
  const int n = 4;
  Form a = Form::phi(n, 0), b = Form::phibar(n, 0);
  EXPECT_EQ(wedge(a, b), -wedge(b, a));
  EXPECT_TRUE(wedge(a, a).is_zero());
  EXPECT_EQ(wedge(word(n, "12", ""), word(n, "3", "")), word(n, "123", ""));
  EXPECT_EQ(wedge(word(n, "2", ""), word(n, "1", "")), word(n, "12", "", -1));
  // conj(phi)^3 moves past phi^1 once
  EXPECT_EQ(wedge(word(n, "", "3"), word(n, "1", "2")), word(n, "1", "32", -1));
}

TEST(Forms, Conjugation) {
  const int n = 4;
  EXPECT_EQ(conjugate(word(n, "1", "2", I())), wedge(word(n, "", "1", -I()), word(n, "2", "")));
  EXPECT_EQ(conjugate(word(n, "1", "2", I())), word(n, "2", "1", I()));
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 50; ++trial) {
    Form x = random_form(rng, n, trial % 3, (trial / 3) % 3);
    EXPECT_EQ(conjugate(conjugate(x)), x);
    Form y = random_form(rng, n, 1, 1);
    EXPECT_EQ(conjugate(wedge(x, y)), wedge(conjugate(x), conjugate(y)));
  }
}

TEST(Forms, BidegreeOfMixedForm) {
  const int n = 3;
  EXPECT_EQ(word(n, "1", "2").bidegree(), (std::pair{1, 1}));
  EXPECT_FALSE((word(n, "1", "") + word(n, "", "1")).bidegree().has_value());
}

TEST(Forms, CanonicalMonomialCounts) {
  long long total = 0;
  for (int p = 0; p <= 5; ++p)
    for (int q = 0; q <= 5; ++q) {
      auto basis = canonical_monomials(5, p, q);
      EXPECT_EQ(static_cast<long long>(basis.size()), binomial(5, p) * binomial(5, q));
      EXPECT_TRUE(std::is_sorted(basis.begin(), basis.end()));
      total += static_cast<long long>(basis.size());
    }
  EXPECT_EQ(total, 1LL << 10);
}

TEST(Bicomplex, Dimensions) {
  for (const auto& [name, kind] : kModels) {
    const auto& bc = *model(name, kind).bc;
    std::size_t total = 0;
    for (int p = 0; p <= bc.n(); ++p)
      for (int q = 0; q <= bc.n(); ++q) {
        EXPECT_EQ(static_cast<long long>(bc.dim(p, q)), binomial(bc.n(), p) * binomial(bc.n(), q));
        total += bc.dim(p, q);
      }
    EXPECT_EQ(total, std::size_t{1} << (2 * bc.n())) << name;
  }
}

TEST(Bicomplex, DifferentialsSquareToZero) {
  for (const auto& [name, kind] : kModels) {
    auto rep = verify_bicomplex(*model(name, kind).bc);
    EXPECT_TRUE(rep.pass) << name << ": " << rep.identity << " on " << rep.witness.label();
  }
}

TEST(Bicomplex, CorruptedTableReportsWitness) {
  StructureEquations se = model("su3").bc->equations();
  se.del[1] += word(4, "13", "");
  Bicomplex bc(se);
  auto rep = verify_bicomplex(bc);
  ASSERT_FALSE(rep.pass);
  EXPECT_FALSE(rep.image.is_zero());
  Form x(4, rep.witness);
  Form recomputed(4);
  if (rep.identity == "del^2")
    recomputed = bc.apply_del(bc.apply_del(x));
  else if (rep.identity == "delbar^2")
    recomputed = bc.apply_delbar(bc.apply_delbar(x));
  else
    recomputed = bc.apply_del(bc.apply_delbar(x)) + bc.apply_delbar(bc.apply_del(x));
  EXPECT_EQ(recomputed, rep.image);
}

TEST(Bicomplex, MatricesAgreeWithLeibnizRule) {
  std::mt19937_64 rng(9);
  for (const auto& [name, kind] : kModels) {
    const auto& bc = *model(name, kind).bc;
    const int n = bc.n();
    for (int trial = 0; trial < 20; ++trial) {
      int p = static_cast<int>(rng() % n), q = static_cast<int>(rng() % n);
      Form x = random_form(rng, n, p, q);
      EXPECT_EQ(bc.to_form(bc.del(p, q).matrix.apply(bc.to_vector(x, p, q)), p + 1, q), bc.apply_del(x));
      EXPECT_EQ(bc.to_form(bc.delbar(p, q).matrix.apply(bc.to_vector(x, p, q)), p, q + 1), bc.apply_delbar(x));
    }
  }
}

TEST(Bicomplex, GradedLeibniz) {
  std::mt19937_64 rng(4);
  const auto& bc = *model("spin5", StructureKind::minus).bc;
  const int n = bc.n();
  for (int trial = 0; trial < 40; ++trial) {
    int p = trial % 3, q = (trial / 3) % 3;
    Form x = random_form(rng, n, p, q), y = random_form(rng, n, 1, trial % 2);
    const FieldElement sign = (p + q) % 2 ? -1 : 1;
    EXPECT_EQ(bc.apply_del(wedge(x, y)), wedge(bc.apply_del(x), y) + sign * wedge(x, bc.apply_del(y)));
    EXPECT_EQ(bc.apply_delbar(wedge(x, y)), wedge(bc.apply_delbar(x), y) + sign * wedge(x, bc.apply_delbar(y)));
  }
}

TEST(Bicomplex, ConjugationIntertwinesDifferentials) {
  for (const auto& [name, kind] : kModels) {
    const auto& bc = *model(name, kind).bc;
    const int n = bc.n();
    const int max_degree = n <= 5 ? 2 * n : 3;
    for (int p = 0; p <= n; ++p)
      for (int q = 0; q <= n && p + q <= max_degree; ++q)
        for (const auto& m : bc.basis(p, q)) {
          Form x(n, m);
          ASSERT_EQ(conjugate(bc.apply_del(x)), bc.apply_delbar(conjugate(x))) << name << " " << m.label();
        }
  }
}

TEST(Bicomplex, Su3ClosedMixedForm) {
  const auto& bc = *model("su3").bc;
  EXPECT_TRUE(bc.apply_delbar(word(4, "1", "4")).is_zero());
}

TEST(Bicomplex, PermutedEnumerationDescribesSameOperator) {
  const auto& base = *model("spin5", StructureKind::plus).bc;
  Bicomplex shuffled(base.equations(), 7);
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    int p = static_cast<int>(rng() % 5), q = static_cast<int>(rng() % 5);
    Form x = random_form(rng, 5, p, q);
    EXPECT_EQ(shuffled.to_form(shuffled.delbar(p, q).matrix.apply(shuffled.to_vector(x, p, q)), p, q + 1),
              base.apply_delbar(x));
  }
}

TEST(Hodge, MonomialGramIsPositiveDefinite) {
  for (const auto& [name, kind] : kModels) {
    if (name == "g2") continue;
    const Model& mod = model(name, kind);
    for (int p = 0; p <= mod.bc->n(); ++p)
      for (int q = 0; q <= mod.bc->n(); ++q) {
        ComplexMatrix g = to_numeric(monomial_gram(*mod.bc, mod.bf, p, q));
        EXPECT_LT((g - g.adjoint()).norm(), 1e-12);
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(g);
        EXPECT_GT(es.eigenvalues().minCoeff(), 0) << name << " (" << p << "," << q << ")";
      }
  }
}

TEST(Hodge, MonomialPairingIsMinorProduct) {
  // <phi^I ^ phibar^J, phi^K ^ phibar^L> = det G_IK * conj det G_JL with G the coframe Gram matrix.
  const Model& mod = model("spin5", StructureKind::plus);
  ComplexMatrix g = to_numeric(coframe_gram(mod.bf));
  auto minor = [&](std::uint32_t r, std::uint32_t c) {
    std::vector<int> rows, cols;
    for (int k = 0; k < 5; ++k) {
      if (r >> k & 1u) rows.push_back(k);
      if (c >> k & 1u) cols.push_back(k);
    }
    ComplexMatrix s(rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < cols.size(); ++j) s(i, j) = g(rows[i], cols[j]);
    return rows.empty() ? std::complex<double>(1) : s.determinant();
  };
  for (auto [p, q] : {std::pair{1, 0}, {1, 1}, {2, 1}, {2, 2}, {3, 2}}) {
    ComplexMatrix gram = to_numeric(monomial_gram(*mod.bc, mod.bf, p, q));
    const auto& basis = mod.bc->basis(p, q);
    for (std::size_t i = 0; i < basis.size(); ++i)
      for (std::size_t j = 0; j < basis.size(); ++j) {
        auto expected = minor(basis[i].holo, basis[j].holo) * std::conj(minor(basis[i].anti, basis[j].anti));
        EXPECT_LT(std::abs(gram(i, j) - expected), 1e-10);
      }
  }
}

TEST(Hodge, StarOfOneIsVolume) {
  for (const auto& [name, kind] : kModels) {
    const Model& mod = model(name, kind);
    const int n = mod.bc->n();
    Form vol = hodge_star(mod.bf, Form::constant(n));
    EXPECT_EQ(vol, volume_form(mod.bf));
    // omega^n / n!
    Form omega = kahler_form(mod.bf), power = Form::constant(n);
    FieldElement factorial = 1;
    for (int k = 1; k <= n; ++k) {
      power = wedge(power, omega);
      factorial = factorial * FieldElement(k);
    }
    EXPECT_EQ(factorial.inv() * power, vol) << name;
  }
}

TEST(Hodge, Su3StarOfFirstPair) {
  const Model& mod = model("su3");
  Form s = hodge_star(mod.bf, word(4, "1", "1"));
  FieldElement c = s.coefficient(mono("234", "234"));
  ASSERT_TRUE(c.is_real());
  EXPECT_GT(c.real_sign(), 0);
}

TEST(Hodge, StarDefiningIdentity) {
  // alpha ^ *x = <alpha, conj x> vol
  const Model& mod = model("spin5", StructureKind::minus);
  const int n = 5;
  Form vol = volume_form(mod.bf);
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 30; ++trial) {
    int p = trial % 4, q = (trial / 4) % 4;
    Form x = random_form(rng, n, p, q, 3);
    Form star = hodge_star(mod.bf, x);
    for (const auto& alpha : canonical_monomials(n, q, p)) {
      Form a(n, alpha);
      EXPECT_EQ(wedge(a, star), pairing(mod.bf, a, conjugate(x)) * vol);
    }
  }
}

TEST(Hodge, StarSquaredIsSign) {
  const Model& mod = model("su3");
  const int n = 4;
  for (int p = 0; p <= n; ++p)
    for (int q = 0; q <= n; ++q)
      for (const auto& m : canonical_monomials(n, p, q)) {
        Form x(n, m);
        const int k = p + q;
        FieldElement sign = (k * (2 * n - k)) % 2 ? -1 : 1;
        ASSERT_EQ(hodge_star(mod.bf, hodge_star(mod.bf, x)), sign * x) << m.label();
      }
}

TEST(Hodge, StarIsInjectiveOnEachBidegree) {
  const Model& mod = model("su3");
  const int n = 4;
  for (int p = 0; p <= n; ++p)
    for (int q = 0; q <= n; ++q) {
      const auto& basis = mod.bc->basis(p, q);
      const auto& target = mod.bc->basis(n - q, n - p);
      ExactMatrix m(target.size(), basis.size());
      for (std::size_t j = 0; j < basis.size(); ++j) {
        Form s = hodge_star(mod.bf, Form(n, basis[j]));
        for (const auto& [mono, c] : s.terms()) m(mod.bc->index_of(mono), j) = c;
      }
      EXPECT_EQ(rank(m), basis.size());
    }
}
