#pragma once

// Pluriclosed flow d omega/dt = -(Ric^B(omega))^{1,1} on left-invariant
// metrics, integrated as an ODE on Hermitian matrices with classical RK4, and a
// sampler of pluriclosed perturbations of a reference metric.

#include <cmath>
#include <random>

#include "liebc/hermitian.hpp"

namespace liebc {

struct FlowOptions {
  double dt = 1e-3;
  long max_steps = 400000;
  double tol = 1e-8;
  long record_every = 0;  // 0 keeps only the first and last states
  int max_halvings = 20;
};

struct FlowState {
  double time = 0;
  ComplexMatrix metric;
  double ricci_norm = 0;
  double lambda = 0;
  double pluriclosed_residual = 0;
};

enum class FlowVerdict { converged, diverged, max_steps };

inline const char* verdict_name(FlowVerdict v) {
  switch (v) {
    case FlowVerdict::converged: return "converged";
    case FlowVerdict::diverged: return "diverged";
    case FlowVerdict::max_steps: return "max_steps";
  }
  return "?";
}

struct FlowResult {
  FlowVerdict verdict = FlowVerdict::max_steps;
  double lambda = 0;          // torus pairing of the final metric
  double initial_lambda = 0;  // torus pairing of the initial metric
  double distance = 0;        // |H - lambda H_ref|_F / |H_ref|_F at the end
  double max_residual = 0;    // largest |del delbar omega| along the trajectory
  double max_exactness = 0;   // largest distance of the velocity from im del + im delbar
  double lambda_drift = 0;    // max |lambda(t) - lambda(0)| divided by the final time
  long steps = 0;
  int halvings = 0;
  std::vector<FlowState> trajectory;
};

class PositivityLoss : public Error {
 public:
  explicit PositivityLoss(FlowState last)
      : Error(ErrorCode::positivity_loss, "metric left the positive cone at t = " + std::to_string(last.time)),
        last_(std::move(last)) {}
  const FlowState& last_state() const { return last_; }

 private:
  FlowState last_;
};

class PluriclosedFlow {
 public:
  PluriclosedFlow(const Bicomplex& bc, ExactMatrix reference, int torus_slot)
      : ricci_(bc), pairing_(torus_slot, reference), reference_(to_numeric(reference)) {
    auto maps = cohomology_maps(bc, CohomologyKind::aeppli, 1, 1);
    auto image = column_basis(maps.exact);
    ComplexMatrix e = ComplexMatrix::Zero(maps.space.dim(), image.size());
    for (std::size_t j = 0; j < image.size(); ++j)
      for (const auto& [i, x] : image[j]) e(i, j) = x.to_complex();
    Eigen::HouseholderQR<ComplexMatrix> qr(e);
    exact_onb_ = qr.householderQ() * ComplexMatrix::Identity(e.rows(), e.cols());
  }

  const NumericRicci& ricci() const { return ricci_; }
  const TorusPairing& pairing() const { return pairing_; }
  const ComplexMatrix& reference() const { return reference_; }

  FlowState state(double t, const ComplexMatrix& h) const {
    return {t, h, ricci_.ricci(h).norm(), pairing_.of_metric(h), ricci_.pluriclosed_residual(h)};
  }

  // Distance of d omega/dt from the Aeppli-exact (1,1)-forms; zero in exact arithmetic.
  double exactness_residual(const ComplexMatrix& h) const {
    Eigen::VectorXcd v = ricci_.omega_vector(ricci_.velocity(h));
    return (v - exact_onb_ * (exact_onb_.adjoint() * v)).norm();
  }

  FlowResult run(ComplexMatrix h, const FlowOptions& opt) const {
    FlowResult res;
    h = hermitian_part(h);
    if (!positive(h)) throw Error(ErrorCode::singular_metric, "initial metric is not positive definite");
    FlowState s = state(0, h);
    res.initial_lambda = s.lambda;
    res.trajectory.push_back(s);
    res.max_residual = s.pluriclosed_residual;
    res.max_exactness = exactness_residual(h);
    double max_dev = 0;
    const double ref_norm = reference_.norm();

    for (long step = 0;; ++step) {
      res.distance = (s.metric - s.lambda * reference_).norm() / ref_norm;
      if (s.ricci_norm < opt.tol && res.distance < opt.tol) {
        res.verdict = FlowVerdict::converged;
        break;
      }
      if (!std::isfinite(s.ricci_norm) || s.metric.norm() > 1e8 * ref_norm) {
        res.verdict = FlowVerdict::diverged;
        break;
      }
      if (step >= opt.max_steps) {
        res.verdict = FlowVerdict::max_steps;
        break;
      }
      double dt = opt.dt;
      ComplexMatrix next;
      int halvings = 0;
      for (;;) {
        next = hermitian_part(rk4(s.metric, dt));
        if (positive(next)) break;
        if (++halvings > opt.max_halvings) throw PositivityLoss(s);
        dt /= 2;
      }
      res.halvings += halvings;
      s = state(s.time + dt, next);
      res.steps = step + 1;
      res.max_residual = std::max(res.max_residual, s.pluriclosed_residual);
      res.max_exactness = std::max(res.max_exactness, exactness_residual(s.metric));
      max_dev = std::max(max_dev, std::abs(s.lambda - res.initial_lambda));
      if (opt.record_every > 0 && res.steps % opt.record_every == 0) res.trajectory.push_back(s);
    }
    if (res.trajectory.size() == 1 || res.trajectory.back().time != s.time) res.trajectory.push_back(s);
    res.lambda = s.lambda;
    res.lambda_drift = s.time > 0 ? max_dev / s.time : 0;
    return res;
  }

 private:
  static ComplexMatrix hermitian_part(const ComplexMatrix& h) { return (h + h.adjoint()) / 2.0; }
  static bool positive(const ComplexMatrix& h) {
    if (!h.allFinite()) return false;
    Eigen::LLT<ComplexMatrix> llt(h);
    return llt.info() == Eigen::Success;
  }

  ComplexMatrix rk4(const ComplexMatrix& h, double dt) const {
    ComplexMatrix k1 = ricci_.velocity(h);
    ComplexMatrix k2 = ricci_.velocity(h + (dt / 2) * k1);
    ComplexMatrix k3 = ricci_.velocity(h + (dt / 2) * k2);
    ComplexMatrix k4 = ricci_.velocity(h + dt * k3);
    return h + (dt / 6) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }

  NumericRicci ricci_;
  TorusPairing pairing_;
  ComplexMatrix reference_;
  ComplexMatrix exact_onb_;
};

// Random pluriclosed perturbations P of a reference metric H_ref: a Gaussian
// Hermitian matrix projected onto ker del delbar, optionally with its torus
// pairing removed, scaled so that |H_ref^{-1/2} P H_ref^{-1/2}|_2 = eps.
class PerturbationSampler {
 public:
  PerturbationSampler(const Bicomplex& bc, const ExactMatrix& reference, int torus_slot)
      : n_(bc.n()), slot_(torus_slot), reference_(to_numeric(reference)) {
    const auto& basis = bc.basis(1, 1);
    auto ker = kernel(bc.del_delbar(1, 1));
    ComplexMatrix k(n_ * n_, ker.size());
    k.setZero();
    for (std::size_t j = 0; j < ker.size(); ++j)
      for (const auto& [i, x] : ker[j]) {
        const Monomial& m = basis[i];
        k(index(std::countr_zero(m.holo), std::countr_zero(m.anti)), j) = x.to_complex();
      }
    Eigen::HouseholderQR<ComplexMatrix> qr(k);
    onb_ = qr.householderQ() * ComplexMatrix::Identity(n_ * n_, ker.size());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(reference_);
    inv_sqrt_ = es.operatorInverseSqrt();
  }

  std::size_t kernel_dimension() const { return onb_.cols(); }

  ComplexMatrix sample(double eps, std::uint64_t seed, bool preserve_lambda = true) const {
    if (eps == 0) return ComplexMatrix::Zero(n_, n_);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    ComplexMatrix a(n_, n_);
    for (int r = 0; r < n_; ++r)
      for (int c = 0; c < n_; ++c) a(r, c) = {normal(rng), normal(rng)};
    ComplexMatrix x = (a + a.adjoint()) / 2.0;
    Eigen::VectorXcd v(n_ * n_);
    for (int r = 0; r < n_; ++r)
      for (int c = 0; c < n_; ++c) v(index(r, c)) = x(r, c);
    v = onb_ * (onb_.adjoint() * v);
    ComplexMatrix p(n_, n_);
    for (int r = 0; r < n_; ++r)
      for (int c = 0; c < n_; ++c) p(r, c) = v(index(r, c));
    p = (p + p.adjoint()) / 2.0;
    if (preserve_lambda) p -= (p(slot_, slot_).real() / reference_(slot_, slot_).real()) * reference_;
    ComplexMatrix rel = inv_sqrt_ * p * inv_sqrt_;
    double size = Eigen::SelfAdjointEigenSolver<ComplexMatrix>(rel).eigenvalues().cwiseAbs().maxCoeff();
    if (size == 0) return p;
    return (eps / size) * p;
  }

  // Residual |del delbar omega(P)| of a perturbation, in coefficient norm.
  double residual(const ComplexMatrix& p) const {
    Eigen::VectorXcd v(n_ * n_);
    for (int r = 0; r < n_; ++r)
      for (int c = 0; c < n_; ++c) v(index(r, c)) = p(r, c);
    return (v - onb_ * (onb_.adjoint() * v)).norm();
  }

 private:
  int index(int r, int c) const { return r * n_ + c; }
  int n_;
  int slot_;
  ComplexMatrix reference_;
  ComplexMatrix onb_;
  ComplexMatrix inv_sqrt_;
};

}  // namespace liebc
