#pragma once

// Experiment drivers behind the command-line tool: gap scaling, pad tradeoffs,
// covered-path off-diagonals and end-to-end adiabatic runs. Rows for independent
// parameters are computed concurrently and returned in input order.

#include <adiagraph/io.hpp>

#include <chrono>
#include <cmath>
#include <future>
#include <random>
#include <string>
#include <vector>

namespace adiagraph {

struct ExperimentRow {
  std::string construction;
  int L = 0;
  int L_prime = 0;
  double gap = 0.0;         // spectral gap of the underlying graph
  double sin2_theta = 0.0;  // volume formula
  double p = 0.0;           // volume formula
  double T_bound = 0.0;     // a priori evolution time, see a_priori_time_bound
  double wall_time = 0.0;   // seconds
};

/// L single-qubit gates alternating H and T; the payload for scaling runs.
inline QuantumCircuit filler_circuit(int L) {
  QuantumCircuit c;
  c.n = 1;
  for (int k = 0; k < L; ++k) c.gates.push_back(k % 2 ? Gate::t(0) : Gate::h(0));
  return c;
}

/// Builds a construction around a circuit of length L with L' - L identities split as
/// evenly as possible, the odd one going to the final window.
inline StandardGraphHamiltonian build_padded(Construction kind, int L, int L_prime) {
  if (L < 0 || L_prime < L) throw InputError("need 0 <= L <= L'");
  const QuantumCircuit c = filler_circuit(L);
  const int pad = L_prime - L;
  switch (kind) {
    case Construction::Kitaev: return kitaev(c, pad / 2, pad - pad / 2);
    case Construction::Hypercube: return hypercube(c, L_prime);
    case Construction::PathContracted: return path_contracted_hypercube(c, L_prime);
    case Construction::CoveredPath: return covered_path_hypercube(c, L_prime);
  }
  throw InputError("unknown construction");
}

/// Spectral gap of the underlying graph. Hypercubes beyond the network cap use the
/// Cayley-graph eigenvalue 2/L'.
inline double underlying_gap(const StandardGraphHamiltonian& h) {
  if (h.network) return spectral_gap(h.network->graph());
  if (h.construction == Construction::Hypercube) return 2.0 / h.L_prime();
  throw NumericError("no underlying graph available");
}

/// Evolution time of the states theorem with every quantity replaced by its a priori
/// bound: |H'| <= 12 pi, |H''| <= 24 pi^2 and gamma >= mu sin^2(theta/2).
inline double a_priori_time_bound(const StandardGraphHamiltonian& h, double graph_gap, double eps) {
  const double mu = std::min(graph_gap, input_penalty_gap(h));
  const double theta = std::asin(std::sqrt(std::clamp(sin2_gap_angle_formula(h), 0.0, 1.0)));
  const double g = mu * std::pow(std::sin(theta / 2.0), 2);
  const double d1 = 12.0 * pi, d2 = 24.0 * pi * pi;
  return (2.0 * d1 / (g * g) + 5.0 * d1 * d1 / (g * g * g) + d2 / (g * g)) / eps;
}

inline ExperimentRow experiment_row(Construction kind, int L, int L_prime, double eps) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto h = build_padded(kind, L, L_prime);
  ExperimentRow r;
  r.construction = to_string(kind);
  r.L = L;
  r.L_prime = L_prime;
  r.gap = underlying_gap(h);
  r.sin2_theta = sin2_gap_angle_formula(h);
  r.p = output_probability_formula(h);
  r.T_bound = a_priori_time_bound(h, r.gap, eps);
  r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

/// Evaluates f on every item concurrently; results keep the input order.
template <class T, class F>
auto parallel_map(const std::vector<T>& items, F f) {
  using R = decltype(f(items.front()));
  std::vector<std::future<R>> jobs;
  for (const auto& x : items) jobs.push_back(std::async(std::launch::async, f, x));
  std::vector<R> out;
  for (auto& j : jobs) out.push_back(j.get());
  return out;
}

/// Log-log slope over the largest decade of x: points with x >= max(x)/10.
inline double largest_decade_exponent(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.empty()) throw NumericError("exponent fit needs data");
  const double top = *std::max_element(x.begin(), x.end());
  std::vector<double> lx, ly;
  for (std::size_t k = 0; k < x.size(); ++k)
    if (x[k] >= top / 10.0) {
      if (!(x[k] > 0.0 && y[k] > 0.0)) throw NumericError("log-log fit needs positive data");
      lx.push_back(std::log(x[k]));
      ly.push_back(std::log(y[k]));
    }
  return least_squares_slope(lx, ly);
}

struct ScalingResult {
  std::vector<ExperimentRow> rows;
  double exponent = 0.0;
};

/// Spectral gap against L' with no identity padding (L = L').
inline ScalingResult gap_scaling(Construction kind, const std::vector<int>& L_primes, double eps = 0.25) {
  ScalingResult res;
  res.rows = parallel_map(L_primes, [=](int Lp) { return experiment_row(kind, Lp, Lp, eps); });
  std::vector<double> x, y;
  for (const auto& r : res.rows) {
    x.push_back(r.L_prime);
    y.push_back(r.gap);
  }
  res.exponent = largest_decade_exponent(x, y);
  return res;
}

/// How L' grows with the circuit length L: L' = L, L' = k L, L' = L^2, or (fraction a)
/// the list holds L' and L_i = L_f = floor(L'/a).
struct PadPolicy {
  enum Kind { None, Linear, Square, Fraction } kind = None;
  int factor = 1;

  std::pair<int, int> lengths(int x) const {
    switch (kind) {
      case None: return {x, x};
      case Linear: return {x, factor * x};
      case Square: return {x, x * x};
      case Fraction: return {x - 2 * (x / factor), x};
    }
    return {x, x};
  }
};

inline PadPolicy parse_pad_policy(const std::string& s) {
  PadPolicy p;
  const auto colon = s.find(':');
  const std::string head = s.substr(0, colon);
  auto factor = [&] {
    if (colon == std::string::npos) throw InputError("pad policy '" + s + "' needs a factor, e.g. " + head + ":2");
    try {
      return std::stoi(s.substr(colon + 1));
    } catch (const std::exception&) {
      throw InputError("bad pad policy factor in '" + s + "'");
    }
  };
  if (head == "none") {
    p.kind = PadPolicy::None;
  } else if (head == "square") {
    p.kind = PadPolicy::Square;
  } else if (head == "linear") {
    p.kind = PadPolicy::Linear;
    p.factor = factor();
  } else if (head == "fraction") {
    p.kind = PadPolicy::Fraction;
    p.factor = factor();
  } else {
    throw InputError("unknown pad policy '" + s + "' (none, linear:k, square, fraction:a)");
  }
  if (p.factor < 1) throw InputError("pad policy factor must be positive");
  return p;
}

struct TradeoffResult {
  std::vector<ExperimentRow> rows;
  double log_sin2_slope = 0.0;  // slope of log sin^2 theta against L
};

inline TradeoffResult tradeoff(Construction kind, const std::vector<int>& xs, const PadPolicy& policy,
                               double eps = 0.25) {
  TradeoffResult res;
  res.rows = parallel_map(xs, [=](int x) {
    const auto [L, Lp] = policy.lengths(x);
    return experiment_row(kind, L, Lp, eps);
  });
  if (res.rows.size() >= 2) {
    std::vector<double> l, ls;
    for (const auto& r : res.rows) {
      l.push_back(r.L);
      ls.push_back(std::log(r.sin2_theta));
    }
    res.log_sin2_slope = least_squares_slope(l, ls);
  }
  return res;
}

struct OffdiagRow {
  int t = 0;
  double w = 0.0;
  double d_t = 0.0;
  double d_next = 0.0;
  double entry = 0.0;  // normalized Laplacian entry (t, t+1)
};

/// Off-diagonal normalized Laplacian entries of the covered path of the hypercube.
inline std::vector<OffdiagRow> covered_path_offdiag(int L_prime) {
  if (L_prime < 1) throw InputError("L' must be positive");
  const WeightedGraph g = weighted_path_graph(covered_path_hypercube_weights(L_prime));
  const RMatrix l = normalized_laplacian(g);
  std::vector<OffdiagRow> rows;
  for (int t = 0; t < L_prime; ++t)
    rows.push_back({t, g.weight(t, t + 1), g.degree(t), g.degree(t + 1), l(t, t + 1)});
  return rows;
}

struct OutcomeRow {
  std::uint64_t x = 0;
  double ideal = 0.0;
  double measured = 0.0;
  double sigma = 0.0;
};

struct EvolveReport {
  std::string construction;
  Eigen::Index dim = 0;
  int ground_dim = 1;
  bool projection = false;
  double T = 0.0;
  int steps = 0;
  double gamma_min = 0.0;
  double d1_max = 0.0;
  double d2_max = 0.0;
  double error = 0.0;
  double beta = 0.0;
  double step_doubling_change = 0.0;
  double p_formula = 0.0;
  double p_empirical = 0.0;
  double p_sigma = 0.0;
  std::vector<OutcomeRow> outcomes;  // computation-register distribution given a final vertex
  double wall_time = 0.0;
};

struct EvolveOptions {
  double epsilon = 0.25;
  int steps = 1 << 20;
  int grid_points = 101;
  std::size_t samples = 100000;
  std::uint64_t seed = 1;
};

/// Evolution time from the states theorem (|S| = 1) or the projections theorem, a
/// propagation at that time with a step-doubling check, the adiabatic error, and a
/// simulated vertex-basis measurement of the evolved state.
inline EvolveReport evolve(const StandardGraphHamiltonian& h, const EvolveOptions& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  detail::require_cap(h.dim(), "evolve");
  EvolveReport rep;
  rep.construction = to_string(h.construction);
  rep.dim = h.dim();
  rep.ground_dim = static_cast<int>(h.valid_inputs.size());
  rep.projection = rep.ground_dim > 1;
  rep.steps = opt.steps;

  const HamiltonianFamily H = [&h](double s) { return h.restricted(s); };
  const auto grid = uniform_grid(opt.grid_points);
  const auto prof = gap_profile(H, grid, rep.ground_dim);
  rep.gamma_min = *std::min_element(prof.gamma.begin(), prof.gamma.end());
  rep.d1_max = *std::max_element(prof.d1.begin(), prof.d1.end());
  rep.d2_max = *std::max_element(prof.d2.begin(), prof.d2.end());
  rep.T = rep.projection ? evolution_time_projections(prof, opt.epsilon) : evolution_time_states(prof, opt.epsilon);

  const auto step = rotating_frame_step(h);
  // The ground space at s is spanned by the history states of the valid inputs.
  const CMatrix psi0 = history_states(h, 0.0, h.valid_inputs);
  auto r = schrodinger_evolve(step, rep.T, psi0, opt.steps);
  const auto fine = schrodinger_evolve(step, rep.T, psi0, 2 * opt.steps);
  rep.step_doubling_change = (fine.final_state - r.final_state).norm();

  if (rep.projection) {
    const CMatrix p1 = history_states(h, 1.0, h.valid_inputs);
    const CMatrix diff = r.final_state * r.final_state.adjoint() - p1 * p1.adjoint();
    rep.error = hermitian_norm(CMatrix(0.5 * (diff + diff.adjoint())));
  } else {
    std::vector<CVector> eta;
    for (double s : grid) eta.push_back(history_state(h.net(), s, h.valid_inputs.front()));
    const auto pe = adiabatic_phase_and_error(H, r, eta, grid);
    rep.error = pe.error;
    rep.beta = pe.beta;
  }

  // Vertex-basis measurement of the evolved state. The projection variant only tracks the
  // ground space, so it samples the uniform mixture over the valid inputs.
  const auto& ptn = h.net();
  const Eigen::Index m = ptn.comp_dim();
  const auto cols = static_cast<double>(r.final_state.cols());
  std::vector<double> prob(static_cast<std::size_t>(r.final_state.rows()));
  for (Eigen::Index k = 0; k < r.final_state.rows(); ++k) prob[k] = r.final_state.row(k).squaredNorm() / cols;
  std::mt19937_64 rng(opt.seed);
  std::discrete_distribution<std::size_t> dist(prob.begin(), prob.end());
  const int first_final = h.L_prime() - h.L_f;
  std::vector<std::size_t> counts(static_cast<std::size_t>(m), 0);
  std::size_t hits = 0;
  for (std::size_t k = 0; k < opt.samples; ++k) {
    const std::size_t idx = dist(rng);
    if (ptn.time_of(static_cast<int>(idx / m)) >= first_final) {
      ++hits;
      ++counts[idx % m];
    }
  }
  rep.p_formula = output_probability_formula(h);
  rep.p_empirical = opt.samples ? double(hits) / double(opt.samples) : 0.0;
  rep.p_sigma = opt.samples ? std::sqrt(rep.p_formula * (1.0 - rep.p_formula) / double(opt.samples)) : 0.0;
  const CMatrix u = circuit_unitary(h.circuit.base());
  RVector ideal = RVector::Zero(m);
  for (auto x : h.valid_inputs) ideal += u.col(static_cast<Eigen::Index>(x)).cwiseAbs2() / cols;
  for (Eigen::Index x = 0; x < m; ++x) {
    OutcomeRow o;
    o.x = static_cast<std::uint64_t>(x);
    o.ideal = ideal[x];
    o.measured = hits ? double(counts[x]) / double(hits) : 0.0;
    o.sigma = hits ? std::sqrt(o.ideal * (1.0 - o.ideal) / double(hits)) : 0.0;
    rep.outcomes.push_back(o);
  }
  rep.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

}  // namespace adiagraph
