#pragma once

// Exact rationals. Values whose numerator and denominator fit in 64 bits
// live inline; anything larger spills to a shared, immutable GMP rational.

#include <gmpxx.h>

#include <cctype>
#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <string_view>

#include "liebc/error.hpp"

namespace liebc {

class Rational {
  using i128 = __int128;
  using u128 = unsigned __int128;

 public:
  Rational() noexcept = default;
  Rational(long long n) : num_(n) {  // NOLINT: implicit integer embedding
    if (n == INT64_MIN) *this = from_i128(n, 1);
  }
  Rational(long long n, long long d) { *this = from_i128(n, d); }
  explicit Rational(const mpq_class& q) {
    mpq_class c(q);
    c.canonicalize();
    *this = from_mpq(c);
  }

  static Rational parse(std::string_view text) {
    std::string s(text);
    auto strip = [](std::string& t) {
      while (!t.empty() && std::isspace(static_cast<unsigned char>(t.front()))) t.erase(t.begin());
      while (!t.empty() && std::isspace(static_cast<unsigned char>(t.back()))) t.pop_back();
    };
    strip(s);
    auto slash = s.find('/');
    std::string ns = s.substr(0, slash);
    std::string ds = slash == std::string::npos ? "1" : s.substr(slash + 1);
    strip(ns);
    strip(ds);
    auto valid = [](const std::string& t) {
      std::size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
      if (i >= t.size()) return false;
      for (; i < t.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
      return true;
    };
    if (!valid(ns) || !valid(ds)) throw Error(ErrorCode::parse, "malformed rational '" + s + "'");
    if (ns[0] == '+') ns.erase(ns.begin());
    if (ds[0] == '+') ds.erase(ds.begin());
    mpz_class n(ns, 10), d(ds, 10);
    if (d == 0) throw Error(ErrorCode::division_by_zero, "zero denominator in '" + s + "'");
    mpq_class q(n, d);
    q.canonicalize();
    return from_mpq(q);
  }

  bool is_zero() const noexcept { return !big_ && num_ == 0; }
  bool is_one() const noexcept { return !big_ && num_ == 1 && den_ == 1; }
  bool is_small() const noexcept { return !big_; }
  int sign() const noexcept {
    if (big_) return sgn(*big_);
    return (num_ > 0) - (num_ < 0);
  }

  mpq_class to_mpq() const {
    if (big_) return *big_;
    mpq_class q;
    mpz_set_si(q.get_num_mpz_t(), num_);
    mpz_set_si(q.get_den_mpz_t(), den_);
    return q;
  }

  mpz_class numerator() const { return to_mpq().get_num(); }
  mpz_class denominator() const { return to_mpq().get_den(); }

  double to_double() const {
    if (big_) return big_->get_d();
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

  std::string to_string() const {
    if (!big_) return std::to_string(num_) + "/" + std::to_string(den_);
    return big_->get_num().get_str() + "/" + big_->get_den().get_str();
  }

  // "p" for integers, "p/q" otherwise.
  std::string pretty() const {
    if (!big_) return den_ == 1 ? std::to_string(num_) : to_string();
    return big_->get_den() == 1 ? big_->get_num().get_str() : to_string();
  }

  std::size_t hash() const noexcept {
    if (!big_) return std::hash<std::int64_t>{}(num_) * 1000003u ^ std::hash<std::int64_t>{}(den_);
    return std::hash<std::string>{}(to_string());
  }

  Rational operator-() const {
    if (!big_) return raw(-num_, den_);
    return from_mpq(-*big_);
  }

  Rational reciprocal() const {
    if (is_zero()) throw Error(ErrorCode::division_by_zero, "reciprocal of 0");
    if (!big_) return num_ < 0 ? raw(-den_, -num_) : raw(den_, num_);
    return from_mpq(1 / *big_);
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (!a.big_ && !b.big_) {
      if (a.den_ == b.den_) return from_i128(i128(a.num_) + b.num_, a.den_);
      return from_i128(i128(a.num_) * b.den_ + i128(b.num_) * a.den_, i128(a.den_) * b.den_);
    }
    return from_mpq(a.to_mpq() + b.to_mpq());
  }
  friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

  friend Rational operator*(const Rational& a, const Rational& b) {
    if (a.is_zero() || b.is_zero()) return Rational();
    if (a.is_one()) return b;
    if (b.is_one()) return a;
    if (!a.big_ && !b.big_) {
      std::int64_t g1 = gcd64(a.num_, b.den_), g2 = gcd64(b.num_, a.den_);
      i128 n = i128(a.num_ / g1) * (b.num_ / g2);
      i128 d = i128(a.den_ / g2) * (b.den_ / g1);
      return from_reduced(n, d);
    }
    return from_mpq(a.to_mpq() * b.to_mpq());
  }
  friend Rational operator/(const Rational& a, const Rational& b) { return a * b.reciprocal(); }

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
    if (a.big_ && b.big_) return *a.big_ == *b.big_;
    return false;  // canonical: a spilled value never fits inline
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) {
      i128 l = i128(a.num_) * b.den_, r = i128(b.num_) * a.den_;
      return l <=> r;
    }
    int c = cmp(a.to_mpq(), b.to_mpq());
    return c <=> 0;
  }

 private:
  static Rational raw(std::int64_t n, std::int64_t d) {
    Rational r;
    r.num_ = n;
    r.den_ = d;
    return r;
  }

  static std::int64_t gcd64(std::int64_t a, std::int64_t b) {
    std::uint64_t x = a < 0 ? -static_cast<std::uint64_t>(a) : a;
    std::uint64_t y = b < 0 ? -static_cast<std::uint64_t>(b) : b;
    while (y) {
      std::uint64_t t = x % y;
      x = y;
      y = t;
    }
    return x == 0 ? 1 : static_cast<std::int64_t>(x);
  }

  static u128 gcd128(u128 x, u128 y) {
    while (y) {
      u128 t = x % y;
      x = y;
      y = t;
    }
    return x;
  }

  static bool fits(i128 v) { return v > i128(INT64_MIN) && v <= i128(INT64_MAX); }

  static mpz_class to_mpz(i128 v) {
    bool neg = v < 0;
    u128 m = neg ? -static_cast<u128>(v) : static_cast<u128>(v);
    std::uint64_t limbs[2] = {static_cast<std::uint64_t>(m), static_cast<std::uint64_t>(m >> 64)};
    mpz_class z;
    mpz_import(z.get_mpz_t(), 2, -1, sizeof(std::uint64_t), 0, 0, limbs);
    if (neg) z = -z;
    return z;
  }

  // n/d already coprime, d > 0.
  static Rational from_reduced(i128 n, i128 d) {
    if (n == 0) return Rational();
    if (fits(n) && fits(d)) return raw(static_cast<std::int64_t>(n), static_cast<std::int64_t>(d));
    Rational r;
    mpq_class q(to_mpz(n), to_mpz(d));
    r.big_ = std::make_shared<const mpq_class>(std::move(q));
    return r;
  }

  static Rational from_i128(i128 n, i128 d) {
    if (d == 0) throw Error(ErrorCode::division_by_zero, "zero denominator");
    if (n == 0) return Rational();
    if (d < 0) {
      n = -n;
      d = -d;
    }
    u128 g = (fits(n) && fits(d))
                 ? static_cast<u128>(gcd64(static_cast<std::int64_t>(n), static_cast<std::int64_t>(d)))
                 : gcd128(n < 0 ? -static_cast<u128>(n) : static_cast<u128>(n), static_cast<u128>(d));
    if (g > 1) {
      n /= static_cast<i128>(g);
      d /= static_cast<i128>(g);
    }
    return from_reduced(n, d);
  }

  static Rational from_mpq(const mpq_class& q) {
    if (sgn(q) == 0) return Rational();
    const mpz_class& n = q.get_num();
    const mpz_class& d = q.get_den();
    if (mpz_fits_slong_p(n.get_mpz_t()) && mpz_fits_slong_p(d.get_mpz_t())) {
      long nl = n.get_si();
      if (nl != INT64_MIN) return raw(nl, d.get_si());
    }
    Rational r;
    r.big_ = std::make_shared<const mpq_class>(q);
    return r;
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  std::shared_ptr<const mpq_class> big_;
};

}  // namespace liebc

template <>
struct std::hash<liebc::Rational> {
  std::size_t operator()(const liebc::Rational& r) const noexcept { return r.hash(); }
};
