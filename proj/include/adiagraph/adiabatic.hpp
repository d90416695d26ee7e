#pragma once

// Adiabatic evolution-time bounds, a midpoint-exponential Schroedinger propagator, finite
// difference derivative norms and the adiabatic phase.

#include <adiagraph/numerics.hpp>

#include <functional>
#include <optional>
#include <vector>

namespace adiagraph {

using HamiltonianFamily = std::function<CMatrix(double)>;

/// Gap and derivative norms sampled on an ascending grid in [0, 1].
struct GapProfile {
  std::vector<double> s;
  std::vector<double> gamma;
  std::vector<double> d1;
  std::vector<double> d2;

  void validate() const {
    if (s.size() < 2) throw NumericError("gap profile needs at least two grid points");
    if (gamma.size() != s.size() || d1.size() != s.size() || d2.size() != s.size())
      throw NumericError("gap profile columns are not aligned with the grid");
    for (std::size_t k = 0; k < s.size(); ++k) {
      if (k && !(s[k] > s[k - 1])) throw NumericError("gap profile grid is not ascending");
      if (!(gamma[k] > 0.0)) throw NumericError("gap profile has a vanishing gap");
    }
  }
};

namespace detail {

inline double evolution_time(const GapProfile& p, double eps, double prefactor, double c3, double c2) {
  if (!(eps > 0.0)) throw NumericError("epsilon must be positive");
  p.validate();
  std::vector<double> integrand(p.s.size());
  for (std::size_t k = 0; k < p.s.size(); ++k)
    integrand[k] = c3 * p.d1[k] * p.d1[k] / std::pow(p.gamma[k], 3) + c2 * p.d2[k] / (p.gamma[k] * p.gamma[k]);
  const double boundary = c2 * (p.d1.front() / (p.gamma.front() * p.gamma.front()) +
                                p.d1.back() / (p.gamma.back() * p.gamma.back()));
  return prefactor / eps * (boundary + trapezoid(p.s, integrand));
}

}  // namespace detail

/// (1/eps) (|H'(0)|/g(0)^2 + |H'(1)|/g(1)^2 + int 5|H'|^2/g^3 + |H''|/g^2 ds).
inline double evolution_time_states(const GapProfile& p, double eps) {
  return detail::evolution_time(p, eps, 1.0, 5.0, 1.0);
}

/// (2/eps) (|H'(0)|/g(0)^2 + |H'(1)|/g(1)^2 + int 6|H'|^2/g^3 + |H''|/g^2 ds).
inline double evolution_time_projections(const GapProfile& p, double eps) {
  return detail::evolution_time(p, eps, 2.0, 6.0, 1.0);
}

struct DerivativeNorms {
  double d1 = 0.0;
  double d2 = 0.0;
};

/// Operator norms of the first and second s-derivative by central differences; at the
/// ends of [0,1] one-sided second-order (d1) and first-order (d2) stencils are used.
inline DerivativeNorms derivative_norms(const HamiltonianFamily& H, double s, double delta) {
  if (!(delta > 0.0)) throw NumericError("finite-difference step must be positive");
  CMatrix first, second;
  if (s - delta >= 0.0 && s + delta <= 1.0) {
    const CMatrix hp = H(s + delta), h0 = H(s), hm = H(s - delta);
    first = (hp - hm) / (2.0 * delta);
    second = (hp - 2.0 * h0 + hm) / (delta * delta);
  } else {
    const double sg = (s - delta < 0.0) ? 1.0 : -1.0;
    const CMatrix h0 = H(s), h1 = H(s + sg * delta), h2 = H(s + 2.0 * sg * delta);
    first = sg * (-3.0 * h0 + 4.0 * h1 - h2) / (2.0 * delta);
    second = (h0 - 2.0 * h1 + h2) / (delta * delta);
  }
  return {operator_norm(first), operator_norm(second)};
}

/// Energy gap above a ground space of known dimension, from the spectrum of H(s).
inline double gap_above_ground(const CMatrix& h, int ground_dim) {
  const RVector ev = eigenvalues_hermitian(h, 1e-10);
  if (ground_dim < 1 || ground_dim >= ev.size()) throw NumericError("ground dimension out of range");
  return ev[ground_dim] - ev[ground_dim - 1];
}

/// Samples gamma, |H'| and |H''| on a grid.
inline GapProfile gap_profile(const HamiltonianFamily& H, const std::vector<double>& s_grid, int ground_dim,
                              double delta = 1e-4) {
  GapProfile p;
  p.s = s_grid;
  for (double s : s_grid) {
    p.gamma.push_back(gap_above_ground(H(s), ground_dim));
    const auto dn = derivative_norms(H, s, delta);
    p.d1.push_back(dn.d1);
    p.d2.push_back(dn.d2);
  }
  return p;
}

inline std::vector<double> uniform_grid(int points) {
  if (points < 2) throw NumericError("grid needs at least two points");
  std::vector<double> s(points);
  for (int k = 0; k < points; ++k) s[k] = double(k) / (points - 1);
  return s;
}

struct EvolutionResult {
  double T = 0.0;
  int steps = 0;
  CMatrix final_state;  // one column per propagated state
  double error = 0.0;
  double beta = 0.0;
};

using EvolutionObserver = std::function<void(double s, const CMatrix& psi)>;

/// Applies psi <- exp(-i tau H(s)) psi in place.
using StepPropagator = std::function<void(double s, double tau, CMatrix& psi)>;

/// Step propagator from a dense eigendecomposition of H(s) at every call.
inline StepPropagator dense_step(HamiltonianFamily H) {
  return [H = std::move(H)](double s, double tau, CMatrix& psi) { psi = expm_skew(H(s), -tau) * psi; };
}

/// Solves (i/T) d/ds psi = H(s) psi on [0,1] with `steps` midpoint-exponential steps
/// exp(-i H(s_mid) T ds).
inline EvolutionResult schrodinger_evolve(const StepPropagator& step, double T, const CMatrix& psi0, int steps,
                                          const EvolutionObserver& observe = {}) {
  if (steps < 1) throw NumericError("need at least one propagation step");
  if (T < 0.0) throw NumericError("evolution time must be nonnegative");
  EvolutionResult r;
  r.T = T;
  r.steps = steps;
  r.final_state = psi0;
  if (observe) observe(0.0, r.final_state);
  if (T == 0.0) return r;
  const double ds = 1.0 / steps;
  for (int k = 0; k < steps; ++k) {
    step((k + 0.5) * ds, T * ds, r.final_state);
    if (observe) observe((k + 1) * ds, r.final_state);
  }
  return r;
}

inline EvolutionResult schrodinger_evolve(const HamiltonianFamily& H, double T, const CMatrix& psi0, int steps,
                                          const EvolutionObserver& observe = {}) {
  return schrodinger_evolve(dense_step(H), T, psi0, steps, observe);
}

/// Lowest eigenvector of H on each grid point, each multiplied by the phase that makes its
/// overlap with the previous one real and positive.
inline std::vector<CVector> ground_state_family(const HamiltonianFamily& H, const std::vector<double>& s_grid) {
  std::vector<CVector> eta;
  for (double s : s_grid) {
    const auto ed = eig_hermitian(H(s), 1e-10);
    eta.push_back(ed.vectors.col(0));
  }
  return eta;
}

inline void align_phases(std::vector<CVector>& eta) {
  for (std::size_t k = 1; k < eta.size(); ++k) {
    const cplx ov = eta[k - 1].dot(eta[k]);
    if (std::abs(ov) > 0.0) eta[k] *= std::conj(ov) / std::abs(ov);
  }
}

struct PhaseAndError {
  double beta = 0.0;
  double error = 0.0;
};

/// beta(1) = int_0^1 i <eta|eta'> ds (trapezoid, central differences) and the distance
/// between the evolved state and e^{i beta} eta(1). The family is phase-aligned first, with
/// eta(0) kept as given.
inline PhaseAndError adiabatic_phase_and_error(const HamiltonianFamily& H, const EvolutionResult& result,
                                               std::vector<CVector> eta, const std::vector<double>& s_grid) {
  if (eta.size() != s_grid.size() || eta.size() < 2) throw NumericError("ground-state family not aligned with grid");
  for (double s : {s_grid.front(), s_grid.back()}) {
    const RVector ev = eigenvalues_hermitian(H(s), 1e-10);
    if (ev.size() > 1 && ev[1] - ev[0] <= kDegeneracyTol)
      throw NumericError("ground space is degenerate; use the projection variant of the adiabatic theorem");
  }
  align_phases(eta);
  const std::size_t n = eta.size();
  std::vector<double> integrand(n);
  for (std::size_t k = 0; k < n; ++k) {
    CVector deriv;
    if (k == 0)
      deriv = (eta[1] - eta[0]) / (s_grid[1] - s_grid[0]);
    else if (k == n - 1)
      deriv = (eta[n - 1] - eta[n - 2]) / (s_grid[n - 1] - s_grid[n - 2]);
    else
      deriv = (eta[k + 1] - eta[k - 1]) / (s_grid[k + 1] - s_grid[k - 1]);
    // i <eta|eta'> is real for a normalized differentiable family.
    integrand[k] = std::real(cplx(0.0, 1.0) * eta[k].dot(deriv));
  }
  PhaseAndError out;
  out.beta = trapezoid(s_grid, integrand);
  out.error = (result.final_state.col(0) - std::polar(1.0, out.beta) * eta.back()).norm();
  return out;
}

/// Orthonormal basis of the k lowest eigenvectors of h.
inline CMatrix lowest_eigenspace(const CMatrix& h, int k) {
  const auto ed = eig_hermitian(h, 1e-10);
  return ed.vectors.leftCols(k);
}

/// || U P(0) U^dagger - P(1) || for the ground space of dimension `ground_dim`.
inline double projection_error(const HamiltonianFamily& H, const StepPropagator& step, double T, int ground_dim,
                               int steps, EvolutionResult* out = nullptr) {
  const CMatrix p0 = lowest_eigenspace(H(0.0), ground_dim);
  auto r = schrodinger_evolve(step, T, p0, steps);
  const CMatrix p1 = lowest_eigenspace(H(1.0), ground_dim);
  const CMatrix diff = r.final_state * r.final_state.adjoint() - p1 * p1.adjoint();
  r.error = hermitian_norm(CMatrix(0.5 * (diff + diff.adjoint())));
  if (out) *out = r;
  return r.error;
}

inline double projection_error(const HamiltonianFamily& H, double T, int ground_dim, int steps,
                               EvolutionResult* out = nullptr) {
  return projection_error(H, dense_step(H), T, ground_dim, steps, out);
}

}  // namespace adiagraph
