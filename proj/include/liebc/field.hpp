#pragma once

// The number field Q(i, sqrt3) as a 4-dimensional Q-vector space with basis
// {1, sqrt3, i, i*sqrt3}. An element is x = (a + b*sqrt3) + i*(c + d*sqrt3).

#include <gmpxx.h>

#include <array>
#include <complex>
#include <string>

#include "liebc/rational.hpp"

namespace liebc {

class FieldElement {
 public:
  FieldElement() = default;
  FieldElement(long long v) : a_(v) {}  // NOLINT: integer embedding
  FieldElement(const Rational& v) : a_(v) {}  // NOLINT: rational embedding
  FieldElement(Rational a, Rational b, Rational c, Rational d)
      : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {}

  static FieldElement zero() { return {}; }
  static FieldElement one() { return FieldElement(1); }
  static FieldElement i() { return {0, 0, 1, 0}; }
  static FieldElement sqrt3() { return {0, 1, 0, 0}; }
  static FieldElement i_sqrt3() { return {0, 0, 0, 1}; }

  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }
  const Rational& c() const { return c_; }
  const Rational& d() const { return d_; }
  std::array<Rational, 4> components() const { return {a_, b_, c_, d_}; }

  bool is_zero() const { return a_.is_zero() && b_.is_zero() && c_.is_zero() && d_.is_zero(); }
  bool is_one() const { return a_.is_one() && b_.is_zero() && c_.is_zero() && d_.is_zero(); }
  bool is_real() const { return c_.is_zero() && d_.is_zero(); }
  bool is_rational() const { return b_.is_zero() && c_.is_zero() && d_.is_zero(); }

  FieldElement conj() const { return {a_, b_, -c_, -d_}; }
  FieldElement real_part() const { return {a_, b_, 0, 0}; }
  FieldElement imag_part() const { return {c_, d_, 0, 0}; }

  // Sign of a real element a + b*sqrt3, decided exactly.
  int real_sign() const {
    if (!is_real()) throw Error(ErrorCode::invalid_argument, "real_sign of non-real element");
    return sign_of(a_, b_);
  }

  FieldElement inv() const {
    if (is_zero()) throw Error(ErrorCode::division_by_zero, "inverse of 0 in Q(i,sqrt3)");
    // x^{-1} = conj(x) / |x|^2, |x|^2 = p + q*sqrt3 in Q(sqrt3).
    Rational p = a_ * a_ + 3 * (b_ * b_) + c_ * c_ + 3 * (d_ * d_);
    Rational q = 2 * (a_ * b_ + c_ * d_);
    Rational n = p * p - 3 * (q * q);
    Rational ip = p / n, iq = -q / n;
    FieldElement norm_inv(ip, iq, 0, 0);
    return conj() * norm_inv;
  }

  FieldElement operator-() const { return {-a_, -b_, -c_, -d_}; }

  friend FieldElement operator+(const FieldElement& x, const FieldElement& y) {
    return {x.a_ + y.a_, x.b_ + y.b_, x.c_ + y.c_, x.d_ + y.d_};
  }
  friend FieldElement operator-(const FieldElement& x, const FieldElement& y) {
    return {x.a_ - y.a_, x.b_ - y.b_, x.c_ - y.c_, x.d_ - y.d_};
  }
  friend FieldElement operator*(const FieldElement& x, const FieldElement& y) {
    if (x.is_zero() || y.is_zero()) return {};
    if (x.is_rational()) return y.scaled(x.a_);
    if (y.is_rational()) return x.scaled(y.a_);
    // (X + iY)(Z + iW) with X, Y, Z, W in Q(sqrt3).
    auto mul = [](const Rational& p, const Rational& q, const Rational& r, const Rational& s) {
      return std::pair<Rational, Rational>{p * r + 3 * (q * s), p * s + q * r};
    };
    auto [xz0, xz1] = mul(x.a_, x.b_, y.a_, y.b_);
    auto [yw0, yw1] = mul(x.c_, x.d_, y.c_, y.d_);
    auto [xw0, xw1] = mul(x.a_, x.b_, y.c_, y.d_);
    auto [yz0, yz1] = mul(x.c_, x.d_, y.a_, y.b_);
    return {xz0 - yw0, xz1 - yw1, xw0 + yz0, xw1 + yz1};
  }
  friend FieldElement operator/(const FieldElement& x, const FieldElement& y) {
    if (y.is_rational()) {
      if (y.a_.is_zero()) throw Error(ErrorCode::division_by_zero, "division by 0 in Q(i,sqrt3)");
      return x.scaled(y.a_.reciprocal());
    }
    return x * y.inv();
  }

  FieldElement& operator+=(const FieldElement& o) { return *this = *this + o; }
  FieldElement& operator-=(const FieldElement& o) { return *this = *this - o; }
  FieldElement& operator*=(const FieldElement& o) { return *this = *this * o; }
  FieldElement& operator/=(const FieldElement& o) { return *this = *this / o; }

  friend bool operator==(const FieldElement& x, const FieldElement& y) {
    return x.a_ == y.a_ && x.b_ == y.b_ && x.c_ == y.c_ && x.d_ == y.d_;
  }

  std::complex<double> to_complex() const { return {eval(a_, b_), eval(c_, d_)}; }

  std::size_t hash() const {
    std::size_t h = a_.hash();
    for (const Rational* r : {&b_, &c_, &d_}) h = h * 31 + r->hash();
    return h;
  }

  // Human-readable form, e.g. "1/2*sqrt3 + 1/2*i".
  std::string to_string() const {
    std::string out;
    auto term = [&](const Rational& r, const char* unit) {
      if (r.is_zero()) return;
      std::string mag = (r.sign() < 0 ? (-r) : r).pretty();
      if (out.empty())
        out += r.sign() < 0 ? "-" : "";
      else
        out += r.sign() < 0 ? " - " : " + ";
      if (*unit == '\0')
        out += mag;
      else if (mag == "1")
        out += unit;
      else
        out += mag + "*" + unit;
    };
    term(a_, "");
    term(b_, "sqrt3");
    term(c_, "i");
    term(d_, "i*sqrt3");
    return out.empty() ? "0" : out;
  }

 private:
  FieldElement scaled(const Rational& s) const { return {a_ * s, b_ * s, c_ * s, d_ * s}; }

  static int sign_of(const Rational& p, const Rational& q) {
    int sp = p.sign(), sq = q.sign();
    if (sq == 0) return sp;
    if (sp == 0 || sp == sq) return sp == 0 ? sq : sp;
    // opposite signs: compare p^2 with 3 q^2
    auto c = p * p <=> 3 * (q * q);
    if (c == 0) return 0;
    return c > 0 ? sp : sq;
  }

  // p + q*sqrt3 to double, rounded from a 256-bit intermediate.
  static double eval(const Rational& p, const Rational& q) {
    if (q.is_zero()) {
      if (p.is_small()) {
        mpq_class v = p.to_mpq();
        if (mpz_sizeinbase(v.get_num_mpz_t(), 2) <= 53 && mpz_sizeinbase(v.get_den_mpz_t(), 2) <= 53)
          return v.get_num().get_d() / v.get_den().get_d();
      }
    }
    mpf_class s3(3, 256), vp(0, 256), vq(0, 256);
    mpf_sqrt(s3.get_mpf_t(), s3.get_mpf_t());
    vp = mpf_class(p.to_mpq(), 256);
    vq = mpf_class(q.to_mpq(), 256);
    mpf_class r(vp + vq * s3, 256);
    return mpf_get_d(r.get_mpf_t());
  }

  Rational a_, b_, c_, d_;
};

}  // namespace liebc

template <>
struct std::hash<liebc::FieldElement> {
  std::size_t operator()(const liebc::FieldElement& x) const { return x.hash(); }
};
