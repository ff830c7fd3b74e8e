#pragma once

// The checks behind `liebc verify`: Lie algebra axioms, the complex structure,
// d^2 = 0, conjugation of the differentials, Bismut flatness and BC/A duality.

#include <optional>
#include <string>
#include <vector>

#include "liebc/builtins.hpp"
#include "liebc/hermitian.hpp"

namespace liebc {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct SuiteOptions {
  bool duality = true;
  bool duality_representatives = true;  // star the representatives, not just compare dimensions
  bool curvature = true;
};

// conjugate(del x) = delbar(conjugate x) on every monomial of degree <= 2.
inline std::optional<Monomial> conjugation_defect(const Bicomplex& bc) {
  const int n = bc.n();
  for (int p = 0; p <= 2; ++p)
    for (int q = 0; p + q <= 2; ++q)
      for (const auto& m : canonical_monomials(n, p, q)) {
        Form x(n, m);
        if (conjugate(bc.apply_del(x)) != bc.apply_delbar(conjugate(x))) return m;
      }
  return std::nullopt;
}

inline std::vector<CheckResult> run_verify_suite(std::shared_ptr<const LieAlgebraModel> model, const StructureSpec& spec,
                                                 const SuiteOptions& opt = {}) {
  std::vector<CheckResult> out;
  auto add = [&](std::string name, bool pass, std::string detail = "") {
    out.push_back({std::move(name), pass, std::move(detail)});
    return pass;
  };
  const LieAlgebraModel& m = *model;

  add("antisymmetry", check_antisymmetry(m));
  auto jac = check_jacobi(m);
  std::string witness;
  if (!jac.pass && !jac.violations.empty()) {
    const auto& v = jac.violations.front();
    witness = "(" + m.labels[v[0]] + ", " + m.labels[v[1]] + ", " + m.labels[v[2]] + ")";
  }
  if (!add("jacobi", jac.pass, witness.empty() ? "" : "fails at " + witness)) return out;
  add("ad_invariant_pairing", check_ad_invariance(m));
  add("torus_abelian", check_torus_abelian(m));
  add("conjugation", check_conjugation(m));

  std::optional<ComplexStructureChoice> cs;
  std::optional<StructureEquations> se;
  try {
    cs = make_structure(model, spec);
    add("samelson_subalgebra", true, cs->label + (cs->isotropic ? ", isotropic" : ", not isotropic"));
    se = derive_structure_equations(*cs);
    add("integrability", true);
  } catch (const Error& e) {
    add(cs ? "integrability" : "samelson_subalgebra", false, e.what());
    return out;
  }

  Bicomplex bc(*se);
  auto d2 = verify_bicomplex(bc);
  add("d_squared", d2.pass,
      d2.pass ? "" : d2.identity + " on " + d2.witness.label() + " gives " + d2.image.to_string());
  auto conj = conjugation_defect(bc);
  add("conjugation_intertwines", !conj, conj ? "fails on " + conj->label() : "");
  if (!d2.pass) return out;

  if (!cs->isotropic) return out;
  ExactMatrix h = biinvariant_metric(*cs);
  add("bf_pluriclosed", is_pluriclosed(bc, h));
  Form ric = bismut_ricci_11(bc, h);
  add("bf_ricci_zero", ric.is_zero(), ric.is_zero() ? "" : ric.to_string());
  if (opt.curvature) {
    FrameAlgebra alg(*se);
    auto conn = bismut_connection(alg, h);
    auto curv = bismut_curvature(alg, conn);
    add("bismut_hermitian", preserves_metric(conn) && preserves_complex_structure(alg, conn));
    add("bismut_flat", curv.flat,
        curv.flat ? "" : "R(w" + std::to_string(curv.a + 1) + ", w" + std::to_string(curv.b + 1) + ") != 0");
  }
  if (opt.duality) {
    auto dual = duality_check(bc, h, opt.duality_representatives);
    add("bc_aeppli_duality", dual.pass,
        dual.pass ? "" : "(" + std::to_string(dual.p) + "," + std::to_string(dual.q) + "): " + dual.reason);
  }
  return out;
}

}  // namespace liebc
