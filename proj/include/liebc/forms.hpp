#pragma once

// Invariant complex forms on n generators phi^1..phi^n and their conjugates.
// A monomial is a pair of bitmasks written in the canonical order
// phi^{i1..ip} ^ phibar^{j1..jq} with both index lists ascending.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "liebc/field.hpp"

namespace liebc {

constexpr int kMaxGenerators = 16;

struct Monomial {
  std::uint32_t holo = 0;
  std::uint32_t anti = 0;

  int p() const { return std::popcount(holo); }
  int q() const { return std::popcount(anti); }
  int degree() const { return p() + q(); }

  // Lexicographic order on ascending index lists of equal length: the set
  // owning the lowest differing index comes first.
  static bool lex_less(std::uint32_t x, std::uint32_t y) {
    std::uint32_t diff = x ^ y;
    if (!diff) return false;
    return (x & (diff & -diff)) != 0;
  }

  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend bool operator<(const Monomial& x, const Monomial& y) {
    if (x.p() != y.p()) return x.p() < y.p();
    if (x.q() != y.q()) return x.q() < y.q();
    if (x.holo != y.holo) return lex_less(x.holo, y.holo);
    return lex_less(x.anti, y.anti);
  }

  // Human-readable label such as "phi^{14,1b}"; indices above 9 are parenthesized.
  std::string label() const {
    auto idx = [](int k) { return k < 9 ? std::to_string(k + 1) : "(" + std::to_string(k + 1) + ")"; };
    std::string s = "phi^{";
    for (int k = 0; k < kMaxGenerators; ++k)
      if (holo >> k & 1u) s += idx(k);
    if (anti) s += ",";
    for (int k = 0; k < kMaxGenerators; ++k)
      if (anti >> k & 1u) s += idx(k) + "b";
    return s + "}";
  }
};

// Number of pairs (i in x, j in y) with i > j.
inline int inversions(std::uint32_t x, std::uint32_t y) {
  int count = 0;
  while (y) {
    int j = std::countr_zero(y);
    y &= y - 1;
    count += std::popcount(x >> (j + 1));
  }
  return count;
}

// Sign s with (x) ^ (y) = s * canonical(x | y), or 0 if they overlap.
inline int wedge_sign(const Monomial& x, const Monomial& y) {
  if ((x.holo & y.holo) || (x.anti & y.anti)) return 0;
  int parity = x.q() * y.p() + inversions(x.holo, y.holo) + inversions(x.anti, y.anti);
  return parity % 2 ? -1 : 1;
}

// All monomials of bidegree (p,q) on n generators, in canonical order.
inline std::vector<Monomial> canonical_monomials(int n, int p, int q) {
  std::vector<std::uint32_t> holo, anti;
  for (std::uint32_t s = 0; s < (1u << n); ++s) {
    if (std::popcount(s) == p) holo.push_back(s);
    if (std::popcount(s) == q) anti.push_back(s);
  }
  auto lex = [](auto x, auto y) { return Monomial::lex_less(x, y); };
  std::sort(holo.begin(), holo.end(), lex);
  std::sort(anti.begin(), anti.end(), lex);
  std::vector<Monomial> out;
  for (auto h : holo)
    for (auto a : anti) out.push_back(Monomial{h, a});
  return out;
}

class Form {
 public:
  using Terms = std::map<Monomial, FieldElement>;

  Form() = default;
  explicit Form(int n) : n_(n) {}
  Form(int n, Monomial m, FieldElement c = FieldElement::one()) : n_(n) { add(m, c); }

  static Form constant(int n, FieldElement c = FieldElement::one()) { return Form(n, Monomial{}, c); }
  static Form phi(int n, int k) { return Form(n, Monomial{1u << k, 0}); }
  static Form phibar(int n, int k) { return Form(n, Monomial{0, 1u << k}); }

  int n() const { return n_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  FieldElement coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? FieldElement() : it->second;
  }

  void add(const Monomial& m, const FieldElement& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = terms_.try_emplace(m, c);
    if (!fresh) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  Form component(int p, int q) const {
    Form out(n_);
    for (const auto& [m, c] : terms_)
      if (m.p() == p && m.q() == q) out.terms_.emplace(m, c);
    return out;
  }

  // The bidegree if the form is homogeneous and nonzero.
  std::optional<std::pair<int, int>> bidegree() const {
    if (terms_.empty()) return std::nullopt;
    auto first = std::pair{terms_.begin()->first.p(), terms_.begin()->first.q()};
    for (const auto& [m, c] : terms_)
      if (m.p() != first.first || m.q() != first.second) return std::nullopt;
    return first;
  }

  Form& operator+=(const Form& o) {
    check_n(o);
    for (const auto& [m, c] : o.terms_) add(m, c);
    return *this;
  }
  Form& operator-=(const Form& o) {
    check_n(o);
    for (const auto& [m, c] : o.terms_) add(m, -c);
    return *this;
  }
  friend Form operator+(Form a, const Form& b) { return a += b; }
  friend Form operator-(Form a, const Form& b) { return a -= b; }
  friend Form operator*(const FieldElement& s, const Form& f) {
    Form out(f.n_);
    if (s.is_zero()) return out;
    for (const auto& [m, c] : f.terms_) out.terms_.emplace(m, s * c);
    return out;
  }
  Form operator-() const { return FieldElement(-1) * *this; }
  friend bool operator==(const Form& a, const Form& b) { return a.n_ == b.n_ && a.terms_ == b.terms_; }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [m, c] : terms_) {
      if (!s.empty()) s += " + ";
      s += "(" + c.to_string() + ")" + m.label();
    }
    return s;
  }

  void check_n(const Form& o) const {
    if (o.n_ != n_)
      throw Error(ErrorCode::mismatched_n,
                  "forms on " + std::to_string(n_) + " and " + std::to_string(o.n_) + " generators");
  }

 private:
  int n_ = 0;
  Terms terms_;
};

inline Form wedge(const Form& x, const Form& y) {
  x.check_n(y);
  Form out(x.n());
  for (const auto& [mx, cx] : x.terms())
    for (const auto& [my, cy] : y.terms()) {
      int s = wedge_sign(mx, my);
      if (s == 0) continue;
      FieldElement c = cx * cy;
      out.add(Monomial{mx.holo | my.holo, mx.anti | my.anti}, s > 0 ? c : -c);
    }
  return out;
}

// conj(phi^I ^ phibar^J) = phibar^I ^ phi^J = (-1)^{|I||J|} phi^J ^ phibar^I.
inline Form conjugate(const Form& x) {
  Form out(x.n());
  for (const auto& [m, c] : x.terms()) {
    FieldElement cc = c.conj();
    out.add(Monomial{m.anti, m.holo}, (m.p() * m.q()) % 2 ? -cc : cc);
  }
  return out;
}

}  // namespace liebc
