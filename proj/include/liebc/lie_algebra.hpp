#pragma once

// Finite-dimensional Lie algebras in a fixed (possibly complex) frame:
// structure constants, Killing pairing, conjugation, and root spaces.

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <complex>
#include <cmath>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "liebc/linalg.hpp"

namespace liebc {

using Vec = std::vector<FieldElement>;

struct LieAlgebraModel {
  std::string name;
  int dim = 0;
  // constants[(i*dim + j)*dim + k] = c^k_{ij} with [e_i, e_j] = sum_k c^k_{ij} e_k
  std::vector<FieldElement> constants;
  std::vector<int> torus;
  DenseMatrix<FieldElement> pairing;
  // Column j is the image of e_j under the antilinear conjugation.
  DenseMatrix<FieldElement> conjugation;
  // Weights on the torus generators used to split roots into positive/negative.
  std::vector<Rational> chamber;
  std::vector<std::string> labels;

  LieAlgebraModel() = default;
  LieAlgebraModel(std::string n, int d)
      : name(std::move(n)),
        dim(d),
        constants(static_cast<std::size_t>(d) * d * d),
        pairing(d, d),
        conjugation(DenseMatrix<FieldElement>::identity(d)) {
    for (int i = 0; i < d; ++i) labels.push_back("e" + std::to_string(i + 1));
  }

  const FieldElement& c(int i, int j, int k) const { return constants[(static_cast<std::size_t>(i) * dim + j) * dim + k]; }
  FieldElement& c(int i, int j, int k) { return constants[(static_cast<std::size_t>(i) * dim + j) * dim + k]; }

  // Sets [e_i, e_j] = sum terms and [e_j, e_i] = -sum terms.
  void set_bracket(int i, int j, const std::vector<std::pair<int, FieldElement>>& terms) {
    for (int k = 0; k < dim; ++k) {
      c(i, j, k) = FieldElement();
      c(j, i, k) = FieldElement();
    }
    for (const auto& [k, v] : terms) {
      c(i, j, k) += v;
      c(j, i, k) -= v;
    }
  }

  Vec unit(int i) const {
    Vec v(dim);
    v[i] = FieldElement::one();
    return v;
  }

  Vec bracket(const Vec& x, const Vec& y) const {
    Vec out(dim);
    for (int i = 0; i < dim; ++i) {
      if (x[i].is_zero()) continue;
      for (int j = 0; j < dim; ++j) {
        if (y[j].is_zero()) continue;
        FieldElement xy = x[i] * y[j];
        for (int k = 0; k < dim; ++k)
          if (!c(i, j, k).is_zero()) out[k] += xy * c(i, j, k);
      }
    }
    return out;
  }

  // Matrix of ad_x acting on frame coordinates.
  DenseMatrix<FieldElement> ad(const Vec& x) const {
    DenseMatrix<FieldElement> m(dim, dim);
    for (int j = 0; j < dim; ++j) {
      Vec col = bracket(x, unit(j));
      for (int k = 0; k < dim; ++k) m(k, j) = col[k];
    }
    return m;
  }

  Vec conj(const Vec& x) const {
    Vec out(dim);
    for (int j = 0; j < dim; ++j) {
      if (x[j].is_zero()) continue;
      FieldElement xc = x[j].conj();
      for (int i = 0; i < dim; ++i)
        if (!conjugation(i, j).is_zero()) out[i] += xc * conjugation(i, j);
    }
    return out;
  }

  FieldElement pair(const Vec& x, const Vec& y) const {
    FieldElement s;
    for (int i = 0; i < dim; ++i) {
      if (x[i].is_zero()) continue;
      for (int j = 0; j < dim; ++j)
        if (!y[j].is_zero() && !pairing(i, j).is_zero()) s += x[i] * pairing(i, j) * y[j];
    }
    return s;
  }
};

struct JacobiReport {
  bool pass = true;
  std::vector<std::array<int, 3>> violations;  // first few offending (i,j,k)
  std::size_t violation_count = 0;
};

inline JacobiReport check_jacobi(const LieAlgebraModel& m, std::size_t keep = 16) {
  JacobiReport rep;
  for (int i = 0; i < m.dim; ++i)
    for (int j = i + 1; j < m.dim; ++j)
      for (int k = j + 1; k < m.dim; ++k) {
        Vec ei = m.unit(i), ej = m.unit(j), ek = m.unit(k);
        Vec s = m.bracket(ei, m.bracket(ej, ek));
        Vec t = m.bracket(ej, m.bracket(ek, ei));
        Vec u = m.bracket(ek, m.bracket(ei, ej));
        bool ok = true;
        for (int l = 0; l < m.dim; ++l)
          if (!(s[l] + t[l] + u[l]).is_zero()) ok = false;
        if (!ok) {
          rep.pass = false;
          ++rep.violation_count;
          if (rep.violations.size() < keep) rep.violations.push_back({i, j, k});
        }
      }
  return rep;
}

inline bool check_antisymmetry(const LieAlgebraModel& m) {
  for (int i = 0; i < m.dim; ++i)
    for (int j = 0; j < m.dim; ++j)
      for (int k = 0; k < m.dim; ++k)
        if (!(m.c(i, j, k) + m.c(j, i, k)).is_zero()) return false;
  return true;
}

// Negative of the trace form tr(ad x ad y): positive definite on a compact real form.
inline DenseMatrix<FieldElement> killing_pairing(const LieAlgebraModel& m) {
  std::vector<DenseMatrix<FieldElement>> ads;
  for (int i = 0; i < m.dim; ++i) ads.push_back(m.ad(m.unit(i)));
  DenseMatrix<FieldElement> b(m.dim, m.dim);
  for (int i = 0; i < m.dim; ++i)
    for (int j = i; j < m.dim; ++j) {
      FieldElement tr;
      for (int r = 0; r < m.dim; ++r)
        for (int s = 0; s < m.dim; ++s)
          if (!ads[i](r, s).is_zero() && !ads[j](s, r).is_zero()) tr += ads[i](r, s) * ads[j](s, r);
      b(i, j) = -tr;
      b(j, i) = -tr;
    }
  return b;
}

// <[x,y],z> + <y,[x,z]> = 0 on all frame triples.
inline bool check_ad_invariance(const LieAlgebraModel& m) {
  for (int x = 0; x < m.dim; ++x)
    for (int y = 0; y < m.dim; ++y)
      for (int z = 0; z < m.dim; ++z) {
        Vec ex = m.unit(x), ey = m.unit(y), ez = m.unit(z);
        if (!(m.pair(m.bracket(ex, ey), ez) + m.pair(ey, m.bracket(ex, ez))).is_zero()) return false;
      }
  return true;
}

inline bool check_torus_abelian(const LieAlgebraModel& m) {
  for (int a : m.torus)
    for (int b : m.torus)
      for (FieldElement x : m.bracket(m.unit(a), m.unit(b)))
        if (!x.is_zero()) return false;
  return true;
}

// conj([x,y]) = [conj x, conj y] on frame pairs, and conj is an involution.
inline bool check_conjugation(const LieAlgebraModel& m) {
  for (int i = 0; i < m.dim; ++i) {
    if (m.conj(m.conj(m.unit(i))) != m.unit(i)) return false;
    for (int j = 0; j < m.dim; ++j)
      if (m.conj(m.bracket(m.unit(i), m.unit(j))) != m.bracket(m.conj(m.unit(i)), m.conj(m.unit(j)))) return false;
  }
  return true;
}

struct RootDatum {
  std::vector<FieldElement> values;  // alpha(H) for each torus generator H
  Vec eigenvector;
  bool positive = false;
};

namespace detail {

// Finds rationals (a, b) with a + b*sqrt3 = x, searching small denominators.
inline std::optional<std::pair<Rational, Rational>> recognize_real(double x) {
  const double s3 = std::sqrt(3.0);
  if (std::abs(x) < 1e-10) return std::pair<Rational, Rational>{Rational(), Rational()};
  for (long long den = 1; den <= 84; ++den) {
    for (long long mag = 0; mag <= 64 * den; ++mag) {
      for (long long bn : {mag, -mag}) {
        double a = den * x - static_cast<double>(bn) * s3;
        double an = std::round(a);
        if (std::abs(a - an) < 1e-7 * std::max(1.0, std::abs(x) * den))
          return std::pair<Rational, Rational>{Rational(static_cast<long long>(an), den), Rational(bn, den)};
        if (mag == 0) break;
      }
    }
  }
  return std::nullopt;
}

inline std::optional<FieldElement> recognize(std::complex<double> z) {
  auto re = recognize_real(z.real());
  auto im = recognize_real(z.imag());
  if (!re || !im) return std::nullopt;
  return FieldElement(re->first, re->second, im->first, im->second);
}

inline Eigen::MatrixXcd to_eigen(const DenseMatrix<FieldElement>& m) {
  Eigen::MatrixXcd out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = m(r, c).to_complex();
  return out;
}

inline Vec normalize_leading(Vec v) {
  for (const auto& x : v)
    if (!x.is_zero()) {
      FieldElement inv = x.inv();
      for (auto& y : v) y = y * inv;
      break;
    }
  return v;
}

}  // namespace detail

// Joint eigen-decomposition of ad over the torus. Uses a generic combination
// of the torus generators; eigenvalues found numerically are recognized as
// field elements and every eigenvector relation is then verified exactly.
inline std::vector<RootDatum> root_decomposition(const LieAlgebraModel& m) {
  if (m.torus.empty()) throw Error(ErrorCode::invalid_argument, "model has no torus generators");
  std::vector<DenseMatrix<FieldElement>> ads;
  for (int t : m.torus) ads.push_back(m.ad(m.unit(t)));
  const std::array<Rational, 4> weights = {Rational(1, 7), Rational(2, 11), Rational(3, 13), Rational(5, 17)};
  for (const Rational& w : weights) {
    DenseMatrix<FieldElement> gen = ads[0];
    Rational wk = 1;
    for (std::size_t t = 1; t < ads.size(); ++t) {
      wk *= w;
      gen = gen + FieldElement(wk) * ads[t];
    }
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(detail::to_eigen(gen), false);
    std::vector<FieldElement> distinct;
    bool recognized = true;
    for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
      auto lam = detail::recognize(es.eigenvalues()[k]);
      if (!lam) {
        recognized = false;
        break;
      }
      if (std::find(distinct.begin(), distinct.end(), *lam) == distinct.end()) distinct.push_back(*lam);
    }
    if (!recognized) break;

    std::vector<RootDatum> roots;
    std::size_t total = 0, cartan = 0;
    bool joint = true;
    for (const auto& lam : distinct) {
      DenseMatrix<FieldElement> shifted = gen;
      for (int i = 0; i < m.dim; ++i) shifted(i, i) -= lam;
      auto basis = kernel(shifted);
      total += basis.size();
      if (lam.is_zero()) {
        cartan = basis.size();
        continue;
      }
      if (basis.size() != 1) {
        joint = false;
        break;
      }
      RootDatum r;
      r.eigenvector = detail::normalize_leading(basis[0]);
      for (const auto& ad : ads) {
        Vec image = ad.apply(r.eigenvector);
        int lead = 0;
        while (r.eigenvector[lead].is_zero()) ++lead;
        FieldElement val = image[lead];
        for (int i = 0; i < m.dim; ++i)
          if (image[i] != val * r.eigenvector[i]) joint = false;
        r.values.push_back(val);
      }
      roots.push_back(std::move(r));
    }
    if (!joint || total != static_cast<std::size_t>(m.dim) || cartan != m.torus.size()) continue;

    for (auto& r : roots) {
      double score = 0;
      for (std::size_t t = 0; t < r.values.size(); ++t) {
        auto z = r.values[t].to_complex();
        double w = t < m.chamber.size() ? m.chamber[t].to_double() : (t == 0 ? 1.0 : 0.0);
        score += w * (z.real() + z.imag());
      }
      if (std::abs(score) < 1e-12)
        throw Error(ErrorCode::invalid_argument, "chamber weights vanish on a root of " + m.name);
      r.positive = score > 0;
    }
    auto lead = [](const Vec& v) {
      std::size_t k = 0;
      while (k < v.size() && v[k].is_zero()) ++k;
      return k;
    };
    std::stable_sort(roots.begin(), roots.end(), [&](const RootDatum& x, const RootDatum& y) {
      if (x.positive != y.positive) return x.positive;
      return lead(x.eigenvector) < lead(y.eigenvector);
    });
    return roots;
  }
  throw Error(ErrorCode::roots_outside_field, "simultaneous diagonalization over Q(i,sqrt3) failed for " + m.name);
}

}  // namespace liebc
