#pragma once

// The bigraded algebra of invariant forms with del and delbar extended as
// antiderivations, stored as one sparse matrix per bidegree.

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <mutex>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "liebc/complex_structure.hpp"

namespace liebc {

using SparseMat = SparseMatrix<FieldElement>;
using SparseVec = SparseVector<FieldElement>;

struct GradedBlockMap {
  int source_p = 0, source_q = 0;
  int target_p = 0, target_q = 0;
  SparseMat matrix;
};

// D applied to a form, given D on the 2n generators phi^1..phi^n, conj(phi)^1..conj(phi)^n.
inline Form leibniz(const std::vector<Form>& generator_images, const Form& x) {
  const int n = x.n();
  Form out(n);
  for (const auto& [mono, coeff] : x.terms()) {
    int pos = 0;
    for (int half = 0; half < 2; ++half) {
      std::uint32_t mask = half == 0 ? mono.holo : mono.anti;
      for (int k = 0; k < n; ++k) {
        if (!(mask >> k & 1u)) continue;
        Monomial prefix = half == 0 ? Monomial{mono.holo & ((1u << k) - 1), 0}
                                    : Monomial{mono.holo, mono.anti & ((1u << k) - 1)};
        Monomial suffix = half == 0 ? Monomial{mono.holo & ~((2u << k) - 1), mono.anti}
                                    : Monomial{0, mono.anti & ~((2u << k) - 1)};
        for (const auto& [m, c] : generator_images[half * n + k].terms()) {
          int s1 = wedge_sign(prefix, m);
          if (!s1) continue;
          Monomial mid{prefix.holo | m.holo, prefix.anti | m.anti};
          int s2 = wedge_sign(mid, suffix);
          if (!s2) continue;
          int sign = s1 * s2 * (pos % 2 ? -1 : 1);
          FieldElement v = coeff * c;
          out.add(Monomial{mid.holo | suffix.holo, mid.anti | suffix.anti}, sign > 0 ? v : -v);
        }
        ++pos;
      }
    }
  }
  return out;
}

class Bicomplex {
 public:
  // A nonzero seed shuffles the monomial enumeration inside every bidegree.
  explicit Bicomplex(StructureEquations se, std::uint64_t permutation_seed = 0) : se_(std::move(se)) {
    const int n = se_.n;
    if (n > kMaxGenerators) throw Error(ErrorCode::invalid_argument, "too many generators");
    for (int k = 0; k < n; ++k) {
      del_gen_.push_back(se_.del[k]);
      delbar_gen_.push_back(se_.delbar[k]);
    }
    for (int k = 0; k < n; ++k) {
      del_gen_.push_back(se_.del_of_bar(k));
      delbar_gen_.push_back(se_.delbar_of_bar(k));
    }

    bases_.assign((n + 1) * (n + 1), {});
    for (int p = 0; p <= n; ++p)
      for (int q = 0; q <= n; ++q) {
        auto& b = bases_[slot(p, q)];
        b = canonical_monomials(n, p, q);
        if (permutation_seed) {
          std::mt19937_64 rng(permutation_seed * 1000003u + static_cast<std::uint64_t>(p * 64 + q));
          std::shuffle(b.begin(), b.end(), rng);
        }
        for (std::size_t i = 0; i < b.size(); ++i) index_[key(b[i])] = static_cast<std::uint32_t>(i);
      }

    del_.resize((n + 1) * (n + 1));
    delbar_.resize((n + 1) * (n + 1));
    for (int p = 0; p <= n; ++p)
      for (int q = 0; q <= n; ++q) {
        del_[slot(p, q)] = build(del_gen_, p, q, p + 1, q);
        delbar_[slot(p, q)] = build(delbar_gen_, p, q, p, q + 1);
      }
  }

  int n() const { return se_.n; }
  const StructureEquations& equations() const { return se_; }
  std::size_t dim(int p, int q) const { return valid(p, q) ? bases_[slot(p, q)].size() : 0; }
  const std::vector<Monomial>& basis(int p, int q) const { return bases_.at(slot(p, q)); }
  std::uint32_t index_of(const Monomial& m) const { return index_.at(key(m)); }

  // del : (p,q) -> (p+1,q) and delbar : (p,q) -> (p,q+1). Out-of-range bidegrees
  // give correctly shaped zero maps.
  const GradedBlockMap& del(int p, int q) const { return lookup(del_, p, q, p + 1, q); }
  const GradedBlockMap& delbar(int p, int q) const { return lookup(delbar_, p, q, p, q + 1); }

  // del delbar : (p,q) -> (p+1,q+1)
  SparseMat del_delbar(int p, int q) const { return del(p, q + 1).matrix * delbar(p, q).matrix; }

  Form apply_del(const Form& x) const { return leibniz(del_gen_, x); }
  Form apply_delbar(const Form& x) const { return leibniz(delbar_gen_, x); }

  SparseVec to_vector(const Form& x, int p, int q) const {
    SparseVec v;
    for (const auto& [m, c] : x.terms()) {
      if (m.p() != p || m.q() != q)
        throw Error(ErrorCode::bidegree_mismatch, "term " + m.label() + " is not of bidegree (" +
                                                      std::to_string(p) + "," + std::to_string(q) + ")");
      v.emplace_back(index_of(m), c);
    }
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return v;
  }

  Form to_form(const SparseVec& v, int p, int q) const {
    Form f(n());
    const auto& b = basis(p, q);
    for (const auto& [i, c] : v) f.add(b[i], c);
    return f;
  }

 private:
  static std::uint32_t key(const Monomial& m) { return m.holo | (m.anti << 16); }
  bool valid(int p, int q) const { return p >= 0 && q >= 0 && p <= n() && q <= n(); }
  std::size_t slot(int p, int q) const { return static_cast<std::size_t>(p) * (n() + 1) + q; }

  GradedBlockMap build(const std::vector<Form>& gen, int p, int q, int tp, int tq) const {
    GradedBlockMap g{p, q, tp, tq, SparseMat(dim(tp, tq), dim(p, q))};
    if (!valid(tp, tq)) return g;
    const auto& src = basis(p, q);
    for (std::size_t j = 0; j < src.size(); ++j) {
      Form img = leibniz(gen, Form(n(), src[j]));
      g.matrix.set_column(j, to_vector(img, tp, tq));
    }
    return g;
  }

  const GradedBlockMap& lookup(const std::vector<GradedBlockMap>& v, int p, int q, int tp, int tq) const {
    if (valid(p, q)) return v[slot(p, q)];
    std::lock_guard lock(empty_mutex_);
    auto [it, fresh] = empty_.try_emplace(std::array{p, q, tp, tq});
    if (fresh) it->second = GradedBlockMap{p, q, tp, tq, SparseMat(dim(tp, tq), 0)};
    return it->second;
  }

  StructureEquations se_;
  std::vector<Form> del_gen_, delbar_gen_;
  std::vector<std::vector<Monomial>> bases_;
  std::unordered_map<std::uint32_t, std::uint32_t> index_;
  std::vector<GradedBlockMap> del_, delbar_;
  mutable std::map<std::array<int, 4>, GradedBlockMap> empty_;
  mutable std::mutex empty_mutex_;
};

struct BicomplexReport {
  bool pass = true;
  std::string identity;  // "del^2", "delbar^2" or "del delbar + delbar del"
  int p = 0, q = 0;
  Monomial witness;
  Form image;
};

// Checks del^2 = 0, delbar^2 = 0 and del delbar + delbar del = 0 on every bidegree.
inline BicomplexReport verify_bicomplex(const Bicomplex& bc) {
  BicomplexReport rep;
  const int n = bc.n();
  auto fail = [&](const SparseMat& m, const char* what, int p, int q, int tp, int tq) {
    if (m.is_zero()) return false;
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (!m.column(c).empty()) {
        rep = {false, what, p, q, bc.basis(p, q)[c], bc.to_form(m.column(c), tp, tq)};
        return true;
      }
    return false;
  };
  for (int p = 0; p <= n; ++p)
    for (int q = 0; q <= n; ++q) {
      if (p + 2 <= n && fail(bc.del(p + 1, q).matrix * bc.del(p, q).matrix, "del^2", p, q, p + 2, q)) return rep;
      if (q + 2 <= n && fail(bc.delbar(p, q + 1).matrix * bc.delbar(p, q).matrix, "delbar^2", p, q, p, q + 2))
        return rep;
      if (p + 1 <= n && q + 1 <= n &&
          fail(bc.del(p, q + 1).matrix * bc.delbar(p, q).matrix + bc.delbar(p + 1, q).matrix * bc.del(p, q).matrix,
               "del delbar + delbar del", p, q, p + 1, q + 1))
        return rep;
    }
  return rep;
}

}  // namespace liebc
