#pragma once

// Standard graph Hamiltonians H(s) = H_prop(s) + H_in + H_graph for the Kitaev path,
// the hypercube, the path-contracted hypercube and the covered path of the hypercube.
// Numerics work on the restriction to proper network states D, where H_prop is the
// network's normalized Laplacian; the full qubit-space operator exists as a term listing.

#include <adiagraph/adiabatic.hpp>
#include <adiagraph/ptn.hpp>

#include <bit>
#include <limits>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace adiagraph {

enum class Construction { Kitaev, Hypercube, PathContracted, CoveredPath };

inline std::string to_string(Construction c) {
  switch (c) {
    case Construction::Kitaev: return "kitaev";
    case Construction::Hypercube: return "hypercube";
    case Construction::PathContracted: return "path_contracted";
    case Construction::CoveredPath: return "covered_path";
  }
  return "?";
}

inline Construction construction_from_string(const std::string& s) {
  for (auto c : {Construction::Kitaev, Construction::Hypercube, Construction::PathContracted, Construction::CoveredPath})
    if (to_string(c) == s) return c;
  throw InputError("unknown construction '" + s + "'");
}

/// Largest hypercube degree for which the network is materialized.
inline constexpr int kHypercubeNetworkCap = 12;

struct StandardGraphHamiltonian {
  Construction construction = Construction::Kitaev;
  int L = 0;
  int L_i = 0;
  int L_f = 0;
  TimeDependentCircuit circuit;           // identity-extended, length L'
  std::vector<double> time_volume;        // vol(V_t), t = 0..L'
  std::vector<std::uint64_t> valid_inputs;
  double in_strength = 1.0;
  std::optional<ParallelTransportNetwork> network;  // absent when too large to materialize

  int L_prime() const { return L_i + L + L_f; }
  int n() const { return circuit.n(); }

  const ParallelTransportNetwork& net() const {
    if (!network)
      throw NumericError(to_string(construction) + " network with L' = " + std::to_string(L_prime()) +
                         " is too large to materialize");
    return *network;
  }

  Eigen::Index dim() const { return net().dim(); }

  /// True when S is the single all-zero input, which uses the Hamming-weight penalty.
  bool default_inputs() const { return valid_inputs.size() == 1 && valid_inputs[0] == 0; }

  bool is_valid_input(std::uint64_t x) const {
    return std::find(valid_inputs.begin(), valid_inputs.end(), x) != valid_inputs.end();
  }

  /// Diagonal value of H_in on |v> (x) |x> for a vertex in the initial window.
  double input_penalty(std::uint64_t x) const {
    if (default_inputs()) return in_strength * std::popcount(x);
    return is_valid_input(x) ? 0.0 : in_strength;
  }

  /// Diagonal of H_in restricted to D.
  RVector input_penalty_diagonal() const {
    const auto& ptn = net();
    const Eigen::Index m = ptn.comp_dim();
    RVector d = RVector::Zero(ptn.dim());
    for (int v = 0; v < ptn.graph().size(); ++v)
      if (ptn.time_of(v) <= L_i)
        for (Eigen::Index x = 0; x < m; ++x) d[v * m + x] = input_penalty(static_cast<std::uint64_t>(x));
    return d;
  }

  CMatrix propagation(double s) const { return network_normalized_laplacian(net(), s); }

  /// H|_D(s) = L(network)(s) + H_in|_D.
  CMatrix restricted(double s) const {
    CMatrix h = propagation(s);
    h.diagonal() += input_penalty_diagonal().cast<cplx>();
    return h;
  }
};

namespace detail {

inline void check_inputs(const std::vector<std::uint64_t>& S, int n) {
  if (n < 1) throw InputError("standard graph Hamiltonians need at least one computation qubit");
  if (S.empty()) throw InputError("valid input set must be nonempty");
  std::set<std::uint64_t> seen;
  for (auto x : S) {
    if (x >> n) throw InputError("valid input " + std::to_string(x) + " wider than " + std::to_string(n) + " bits");
    if (!seen.insert(x).second) throw InputError("duplicate valid input");
  }
}

inline StandardGraphHamiltonian base_hamiltonian(Construction kind, const QuantumCircuit& c, int L_i, int L_f,
                                                 std::vector<std::uint64_t> S) {
  c.validate();
  check_inputs(S, c.n);
  if (L_i < 0 || L_f < 0) throw InputError("identity pad counts must be nonnegative");
  if (c.length() + L_i + L_f < 1) throw InputError("the extended circuit needs at least one time step");
  StandardGraphHamiltonian h;
  h.construction = kind;
  h.L = c.length();
  h.L_i = L_i;
  h.L_f = L_f;
  h.circuit = TimeDependentCircuit(identity_extend(c, L_i, L_f));
  h.valid_inputs = std::move(S);
  h.in_strength = 1.0 / c.n;
  return h;
}

inline std::pair<int, int> hypercube_pads(const QuantumCircuit& c, int L_prime) {
  if (L_prime < c.length())
    throw InputError("L' = " + std::to_string(L_prime) + " is smaller than the circuit length " +
                     std::to_string(c.length()) + "; the graph diameter must reach the circuit length");
  const int pad = L_prime - c.length();
  return {pad / 2, pad - pad / 2};  // the odd identity goes to the final window
}

inline void attach_path_network(StandardGraphHamiltonian& h, const WeightedGraph& path) {
  h.network = ParallelTransportNetwork(path, identity_time_map(h.L_prime()), h.circuit);
  h.time_volume = h.network->time_volumes();
}

}  // namespace detail

inline std::vector<std::uint64_t> default_valid_inputs() { return {0}; }

/// Regular path of length L'+1 with the domain-wall clock.
inline StandardGraphHamiltonian kitaev(const QuantumCircuit& c, int L_i, int L_f,
                                       std::vector<std::uint64_t> S = default_valid_inputs()) {
  auto h = detail::base_hamiltonian(Construction::Kitaev, c, L_i, L_f, std::move(S));
  detail::attach_path_network(h, regular_path_graph(h.L_prime()));
  return h;
}

inline std::vector<double> hypercube_time_volumes(int L_prime) {
  std::vector<double> vol(L_prime + 1);
  for (int t = 0; t <= L_prime; ++t) vol[t] = L_prime * binomial(L_prime, t);
  return vol;
}

/// Hypercube of degree L' with time map = Hamming weight.
inline StandardGraphHamiltonian hypercube(const QuantumCircuit& c, int L_prime,
                                          std::vector<std::uint64_t> S = default_valid_inputs()) {
  const auto [Li, Lf] = detail::hypercube_pads(c, L_prime);
  auto h = detail::base_hamiltonian(Construction::Hypercube, c, Li, Lf, std::move(S));
  h.time_volume = hypercube_time_volumes(L_prime);
  if (L_prime <= kHypercubeNetworkCap) {
    WeightedGraph g = hypercube_graph(L_prime);
    std::vector<int> tmap(g.size());
    for (int v = 0; v < g.size(); ++v) tmap[v] = std::popcount(static_cast<unsigned>(v));
    h.network = ParallelTransportNetwork(std::move(g), std::move(tmap), h.circuit);
  }
  return h;
}

/// w(t-1,t) = t * binom(L', t): the hypercube contracted along Hamming weight.
inline std::vector<double> path_contracted_hypercube_weights(int L_prime) {
  std::vector<double> w(L_prime);
  for (int t = 1; t <= L_prime; ++t) w[t - 1] = t * binomial(L_prime, t);
  return w;
}

/// w(t,t+1) = sqrt((L'-t)(t+1)): the path covered by the hypercube through Hamming weight.
inline std::vector<double> covered_path_hypercube_weights(int L_prime) {
  std::vector<double> w(L_prime);
  for (int t = 0; t < L_prime; ++t) w[t] = std::sqrt(double(L_prime - t) * double(t + 1));
  return w;
}

/// Closed-form hopping prefactor w(t-1,t)/sqrt(d_{t-1} d_t) of the path-contracted hypercube,
/// with d_t = L' binom(L', t).
inline double path_contracted_prefactor(int L_prime, int t) {
  return std::sqrt(double(t) * double(L_prime - t + 1)) / L_prime;
}

inline StandardGraphHamiltonian path_contracted_hypercube(const QuantumCircuit& c, int L_prime,
                                                          std::vector<std::uint64_t> S = default_valid_inputs()) {
  const auto [Li, Lf] = detail::hypercube_pads(c, L_prime);
  auto h = detail::base_hamiltonian(Construction::PathContracted, c, Li, Lf, std::move(S));
  detail::attach_path_network(h, weighted_path_graph(path_contracted_hypercube_weights(L_prime)));
  return h;
}

inline StandardGraphHamiltonian covered_path_hypercube(const QuantumCircuit& c, int L_prime,
                                                       std::vector<std::uint64_t> S = default_valid_inputs()) {
  const auto [Li, Lf] = detail::hypercube_pads(c, L_prime);
  auto h = detail::base_hamiltonian(Construction::CoveredPath, c, Li, Lf, std::move(S));
  detail::attach_path_network(h, weighted_path_graph(covered_path_hypercube_weights(L_prime)));
  return h;
}

/// Covered path with explicit pads, for studies of the pad/volume tradeoff.
inline StandardGraphHamiltonian covered_path_hypercube_padded(const QuantumCircuit& c, int L_i, int L_f,
                                                              std::vector<std::uint64_t> S = default_valid_inputs()) {
  auto h = detail::base_hamiltonian(Construction::CoveredPath, c, L_i, L_f, std::move(S));
  detail::attach_path_network(h, weighted_path_graph(covered_path_hypercube_weights(h.L_prime())));
  return h;
}

// ---------------------------------------------------------------------------------------
// Volume formulas

inline double total_volume(const StandardGraphHamiltonian& h) {
  double v = 0.0;
  for (double x : h.time_volume) v += x;
  return v;
}

/// sin^2 of the gap angle: fraction of the volume in the initial window t <= L_i.
inline double sin2_gap_angle_formula(const StandardGraphHamiltonian& h) {
  double acc = 0.0;
  for (int t = 0; t <= h.L_i; ++t) acc += h.time_volume[t];
  return acc / total_volume(h);
}

/// Probability that a vertex measurement of a history state lands in the final window.
inline double output_probability_formula(const StandardGraphHamiltonian& h) {
  double acc = 0.0;
  for (int t = h.L_prime() - h.L_f; t <= h.L_prime(); ++t) acc += h.time_volume[t];
  return acc / total_volume(h);
}

// ---------------------------------------------------------------------------------------
// Subspaces and oracles on D

/// Orthonormal basis of the null-space of H_in|_D (coordinate vectors).
inline CMatrix input_null_space(const StandardGraphHamiltonian& h) {
  const RVector d = h.input_penalty_diagonal();
  std::vector<Eigen::Index> idx;
  for (Eigen::Index k = 0; k < d.size(); ++k)
    if (d[k] == 0.0) idx.push_back(k);
  CMatrix b = CMatrix::Zero(d.size(), static_cast<Eigen::Index>(idx.size()));
  for (std::size_t j = 0; j < idx.size(); ++j) b(idx[j], static_cast<Eigen::Index>(j)) = 1.0;
  return b;
}

/// History states |eta_x(s)> for x in the given list, as columns.
inline CMatrix history_states(const StandardGraphHamiltonian& h, double s, const std::vector<std::uint64_t>& xs) {
  CMatrix b(h.dim(), static_cast<Eigen::Index>(xs.size()));
  for (std::size_t j = 0; j < xs.size(); ++j) b.col(static_cast<Eigen::Index>(j)) = history_state(h.net(), s, xs[j]);
  return b;
}

inline std::vector<std::uint64_t> invalid_inputs(const StandardGraphHamiltonian& h) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t x = 0; x < static_cast<std::uint64_t>(h.net().comp_dim()); ++x)
    if (!h.is_valid_input(x)) out.push_back(x);
  return out;
}

/// Gap angle from numerically computed subspaces: N_in against the part of the
/// propagation null-space orthogonal to the ground space.
inline double gap_angle_oracle(const StandardGraphHamiltonian& h, double s) {
  const CMatrix n_in = input_null_space(h);
  const CMatrix n_prop = null_space(h.propagation(s), 1e-8);
  const CMatrix ground = null_space(h.restricted(s), 1e-8);
  if (n_prop.cols() <= ground.cols())
    throw NumericError("gap angle undefined: every propagation ground state is a valid-input state");
  const CMatrix rest = n_prop - ground * (ground.adjoint() * n_prop);
  return principal_angle(n_in, orthonormal_basis(rest, 1e-6));
}

struct OutputProbability {
  double formula = 0.0;
  std::optional<double> empirical;
  std::optional<double> sigma;  // binomial standard error of the empirical value
};

/// Formula value, and optionally a simulated vertex-basis measurement of the final history
/// state of the first valid input.
inline OutputProbability output_probability(const StandardGraphHamiltonian& h, std::size_t samples = 0,
                                            std::uint64_t seed = 1) {
  OutputProbability out;
  out.formula = output_probability_formula(h);
  if (samples == 0) return out;
  const auto& ptn = h.net();
  const CVector eta = history_state(ptn, 1.0, h.valid_inputs.front());
  std::vector<double> prob(static_cast<std::size_t>(eta.size()));
  for (Eigen::Index k = 0; k < eta.size(); ++k) prob[k] = std::norm(eta[k]);
  std::mt19937_64 rng(seed);
  std::discrete_distribution<std::size_t> dist(prob.begin(), prob.end());
  const int first_final = h.L_prime() - h.L_f;
  std::size_t hits = 0;
  for (std::size_t k = 0; k < samples; ++k) {
    const auto v = static_cast<int>(dist(rng) / static_cast<std::size_t>(ptn.comp_dim()));
    if (ptn.time_of(v) >= first_final) ++hits;
  }
  const double p = double(hits) / double(samples);
  out.empirical = p;
  out.sigma = std::sqrt(std::max(out.formula * (1.0 - out.formula), 1e-300) / double(samples));
  return out;
}

/// Gap of H|_D(s) above its |S|-dimensional null-space.
inline double energy_gap(const StandardGraphHamiltonian& h, double s) {
  const RVector ev = eigenvalues_hermitian(h.restricted(s), 1e-10);
  const auto k = static_cast<Eigen::Index>(h.valid_inputs.size());
  if (std::abs(ev[k - 1]) > kDegeneracyTol || ev[k] <= kDegeneracyTol)
    throw NumericError("restricted Hamiltonian does not have a null-space of dimension |S|");
  return ev[k];
}

struct AngleBounds {
  double mu = 0.0;       // min(spectral gap, gap of H_in|_D)
  double sin2 = 0.0;     // sin^2 theta
  double lower = 0.0;    // mu sin^2(theta/2)
  double upper = 0.0;    // ||H_in|_D|| sin^2 theta
};

/// Smallest nonzero eigenvalue of H_in|_D.
inline double input_penalty_gap(const StandardGraphHamiltonian& h) { return h.in_strength; }

inline double input_penalty_norm(const StandardGraphHamiltonian& h) {
  return h.default_inputs() ? h.in_strength * h.n() : h.in_strength;
}

/// Sandwich for the energy gap from the gap-angle lemma, instantiated with H_1 = H_in|_D.
inline AngleBounds angle_bounds(const StandardGraphHamiltonian& h) {
  AngleBounds b;
  b.mu = std::min(spectral_gap(h.net().graph()), input_penalty_gap(h));
  b.sin2 = sin2_gap_angle_formula(h);
  const double theta = std::asin(std::sqrt(std::clamp(b.sin2, 0.0, 1.0)));
  b.lower = b.mu * std::pow(std::sin(theta / 2.0), 2);
  b.upper = input_penalty_norm(h) * b.sin2;
  return b;
}

// ---------------------------------------------------------------------------------------
// Rotating frame

/// H|_D(s) = R(s) H0 R(s)^dagger with H0 = L(G) (x) I + H_in|_D: the block rotation undoes the
/// transport, and H_in lives on t <= L_i where every U_t(s) is the identity.
inline CMatrix rotating_frame_hamiltonian(const StandardGraphHamiltonian& h) {
  const auto& ptn = h.net();
  const Eigen::Index m = ptn.comp_dim();
  const RMatrix lg = normalized_laplacian(ptn.graph());
  CMatrix h0 = kron(lg.cast<cplx>(), CMatrix::Identity(m, m));
  h0.diagonal() += h.input_penalty_diagonal().cast<cplx>();
  return h0;
}

/// Exact exp(-i tau H|_D(s)) through the rotating frame: one eigendecomposition of H0 up
/// front, then only the block rotation per step.
inline StepPropagator rotating_frame_step(const StandardGraphHamiltonian& h) {
  const auto& ptn = h.net();
  auto ed = std::make_shared<EigenDecomposition<cplx>>(eig_hermitian(rotating_frame_hamiltonian(h), 1e-10));
  const Eigen::Index m = ptn.comp_dim();
  const int nv = ptn.graph().size();
  std::vector<int> tmap = ptn.time_map();
  TimeDependentCircuit circ = h.circuit;
  return [ed, m, nv, tmap, circ](double s, double tau, CMatrix& psi) {
    std::vector<CMatrix> prefix(circ.length() + 1);
    prefix[0] = CMatrix::Identity(m, m);
    for (int t = 1; t <= circ.length(); ++t)
      prefix[t] = circ.is_identity_step(t) ? prefix[t - 1] : CMatrix(circ.at(s, t) * prefix[t - 1]);
    for (int v = 0; v < nv; ++v) psi.middleRows(v * m, m) = prefix[tmap[v]].adjoint() * psi.middleRows(v * m, m);
    CMatrix c = ed->vectors.adjoint() * psi;
    for (Eigen::Index k = 0; k < c.rows(); ++k) c.row(k) *= std::polar(1.0, -tau * ed->values[k]);
    psi = ed->vectors * c;
    for (int v = 0; v < nv; ++v) psi.middleRows(v * m, m) = prefix[tmap[v]] * psi.middleRows(v * m, m);
  };
}

// ---------------------------------------------------------------------------------------
// Local terms on the full qubit space

enum class CompOp { Identity, Step, ProjectorOne, BasisProjector };

/// coefficient * (|ket><bra| on register qubits) (x) (computation operator), plus the
/// Hermitian conjugate for hopping terms (ket != bra).
struct LocalTerm {
  std::string group;  // "prop", "in", "graph"
  double coefficient = 0.0;
  std::vector<int> register_qubits;
  std::string ket, bra;
  CompOp comp = CompOp::Identity;
  int step = 0;                   // CompOp::Step: U_step(s)
  std::vector<int> comp_qubits;   // support on the computation register
  std::uint64_t basis_state = 0;  // CompOp::BasisProjector

  bool hopping() const { return ket != bra; }
  int locality() const { return static_cast<int>(register_qubits.size() + comp_qubits.size()); }
  double norm() const { return std::abs(coefficient); }
};

struct LocalEncoding {
  int register_qubits = 0;                  // graph register size
  std::vector<std::uint64_t> vertex_state;  // register basis state of each network vertex
  std::vector<LocalTerm> terms;
};

namespace detail {

/// Register pattern for the clock projector |a><b| with |a - b| <= 1 on the domain-wall
/// clock occupying register qubits offset .. offset+L'-1.
struct ClockPattern {
  std::vector<int> qubits;
  std::string ket, bra;
};

inline ClockPattern clock_op(int Lp, int offset, int a, int b) {
  ClockPattern p;
  auto q = [&](int k) { return offset + k - 1; };  // clock qubits are numbered from 1
  auto bits_of = [&](int t, const std::vector<int>& ks) {
    std::string s;
    for (int k : ks) s += (k <= t) ? '1' : '0';
    return s;
  };
  std::vector<int> ks;
  if (Lp == 1) {
    ks = {1};
  } else {
    const int hi = std::max(a, b);
    const int lo = std::min(a, b);
    if (a == b) {
      if (a <= 1)
        ks = {1, 2};
      else if (a == Lp)
        ks = {Lp - 1, Lp};
      else
        ks = {a - 1, a, a + 1};
    } else {
      if (lo == 0)
        ks = {1, 2};
      else if (hi == Lp)
        ks = {Lp - 1, Lp};
      else
        ks = {hi - 1, hi, hi + 1};
    }
  }
  for (int k : ks) p.qubits.push_back(q(k));
  p.ket = bits_of(a, ks);
  p.bra = bits_of(b, ks);
  return p;
}

inline std::uint64_t domain_wall(int Lp, int t) {
  std::uint64_t r = 0;
  for (int k = 1; k <= Lp; ++k) r = (r << 1) | static_cast<std::uint64_t>(k <= t);
  return r;
}

inline std::vector<int> gate_support(const StandardGraphHamiltonian& h, int t) {
  return h.circuit.base().gates.at(t - 1).targets;
}

inline void add_input_terms(const StandardGraphHamiltonian& h, int offset, std::vector<int> extra_qubits,
                            std::string extra_bits, std::vector<LocalTerm>& out) {
  const int Lp = h.L_prime();
  for (int t = 0; t <= h.L_i; ++t) {
    const auto cp = clock_op(Lp, offset, t, t);
    auto base = [&]() {
      LocalTerm term;
      term.group = "in";
      term.register_qubits = extra_qubits;
      term.register_qubits.insert(term.register_qubits.end(), cp.qubits.begin(), cp.qubits.end());
      term.ket = extra_bits + cp.ket;
      term.bra = extra_bits + cp.bra;
      return term;
    };
    if (h.default_inputs()) {
      for (int i = 0; i < h.n(); ++i) {
        LocalTerm term = base();
        term.coefficient = h.in_strength;
        term.comp = CompOp::ProjectorOne;
        term.comp_qubits = {i};
        out.push_back(term);
      }
    } else {
      for (std::uint64_t x = 0; x < (std::uint64_t{1} << h.n()); ++x) {
        if (h.is_valid_input(x)) continue;
        LocalTerm term = base();
        term.coefficient = h.in_strength;
        term.comp = CompOp::BasisProjector;
        term.basis_state = x;
        for (int i = 0; i < h.n(); ++i) term.comp_qubits.push_back(i);
        out.push_back(term);
      }
    }
  }
}

/// coef_ket |ket><ket| + coef_bra |bra><bra| - hop (|ket><bra| (x) U_step + h.c.) on one clock
/// pattern. With coef_ket * coef_bra = hop^2 the sum is positive semi-definite on the whole
/// register, not only on proper states.
inline void add_edge_terms(std::vector<int> qubits, const std::string& ket, const std::string& bra, double coef_ket,
                           double coef_bra, double hop, int step, std::vector<int> comp_qubits,
                           std::vector<LocalTerm>& out) {
  LocalTerm base;
  base.group = "prop";
  base.register_qubits = std::move(qubits);
  for (auto [pattern, coef] : {std::pair{ket, coef_ket}, std::pair{bra, coef_bra}}) {
    if (coef == 0.0) continue;
    LocalTerm term = base;
    term.coefficient = coef;
    term.ket = term.bra = pattern;
    out.push_back(term);
  }
  LocalTerm term = base;
  term.coefficient = -hop;
  term.ket = ket;
  term.bra = bra;
  term.comp = CompOp::Step;
  term.step = step;
  term.comp_qubits = std::move(comp_qubits);
  out.push_back(term);
}

inline void add_unary_penalty(int Lp, int offset, double coef, std::vector<LocalTerm>& out) {
  for (int i = 2; i <= Lp; ++i) {
    LocalTerm term;
    term.group = "graph";
    term.coefficient = coef;
    term.register_qubits = {offset + i - 2, offset + i - 1};
    term.ket = term.bra = "01";
    out.push_back(term);
  }
}

}  // namespace detail

/// Term listing of the full qubit-space Hamiltonian. Path-type constructions use an L'-qubit
/// domain-wall clock; the hypercube uses an L'-qubit vertex register followed by the clock.
/// Path-type H_prop is written edge by edge, each edge with its own pair of clock projectors,
/// which keeps every term positive semi-definite off D as well.
inline LocalEncoding local_encoding(const StandardGraphHamiltonian& h) {
  using detail::clock_op;
  LocalEncoding enc;
  const int Lp = h.L_prime();
  if (h.construction == Construction::Hypercube) {
    enc.register_qubits = 2 * Lp;
    if (h.network)
      for (int v = 0; v < h.network->graph().size(); ++v)
        enc.vertex_state.push_back((static_cast<std::uint64_t>(v) << Lp) | detail::domain_wall(Lp, h.network->time_of(v)));
    // I - A/L' with a global identity. Splitting the identity over edges would leave labels
    // whose weight trails the clock without any energy cost, since H_label only checks clock 0.
    LocalTerm id;
    id.group = "prop";
    id.coefficient = 1.0;
    enc.terms.push_back(id);
    for (int j = 1; j <= Lp; ++j)
      for (int t = 1; t <= Lp; ++t) {
        const auto cp = clock_op(Lp, Lp, t, t - 1);
        LocalTerm term;
        term.group = "prop";
        term.coefficient = -1.0 / Lp;
        term.register_qubits = {j - 1};
        term.register_qubits.insert(term.register_qubits.end(), cp.qubits.begin(), cp.qubits.end());
        term.ket = "1" + cp.ket;
        term.bra = "0" + cp.bra;
        term.comp = CompOp::Step;
        term.step = t;
        term.comp_qubits = detail::gate_support(h, t);
        enc.terms.push_back(term);
      }
    detail::add_input_terms(h, Lp, {}, "", enc.terms);
    for (int i = 1; i <= Lp; ++i) {
      const auto cp = clock_op(Lp, Lp, 0, 0);
      LocalTerm term;
      term.group = "graph";
      term.coefficient = 1.0 / Lp;
      term.register_qubits = {i - 1};
      term.register_qubits.insert(term.register_qubits.end(), cp.qubits.begin(), cp.qubits.end());
      term.ket = term.bra = "1" + cp.ket;
      enc.terms.push_back(term);
    }
    detail::add_unary_penalty(Lp, Lp, 1.0 / Lp, enc.terms);
    return enc;
  }

  // Path-type constructions: coefficients read off the weighted path.
  const auto& g = h.net().graph();
  enc.register_qubits = Lp;
  for (int t = 0; t <= Lp; ++t) enc.vertex_state.push_back(detail::domain_wall(Lp, t));
  // Edge (t-1, t) carries w/d_t and w/d_{t-1} of the two vertex diagonals; loops add nothing
  // since the diagonal is 1 - w(t,t)/d_t.
  for (int t = 1; t <= Lp; ++t) {
    const auto cp = clock_op(Lp, 0, t, t - 1);
    const double w = g.weight(t - 1, t);
    detail::add_edge_terms(cp.qubits, cp.ket, cp.bra, w / g.degree(t), w / g.degree(t - 1),
                           w / std::sqrt(g.degree(t - 1) * g.degree(t)), t, detail::gate_support(h, t), enc.terms);
  }
  detail::add_input_terms(h, 0, {}, "", enc.terms);
  detail::add_unary_penalty(Lp, 0, 1.0 / Lp, enc.terms);
  return enc;
}

struct LocalTermAudit {
  int term_count = 0;
  int max_locality = 0;
  double min_term_norm = 0.0;
  double max_term_norm = 0.0;
  double min_propagation_norm = 0.0;  // smallest H_prop hopping term
  int propagation_terms = 0;
  int input_terms = 0;
  int graph_terms = 0;
};

inline LocalTermAudit local_term_audit(const StandardGraphHamiltonian& h) {
  const auto enc = local_encoding(h);
  LocalTermAudit a;
  a.min_term_norm = a.min_propagation_norm = std::numeric_limits<double>::infinity();
  for (const auto& t : enc.terms) {
    ++a.term_count;
    a.max_locality = std::max(a.max_locality, t.locality());
    a.min_term_norm = std::min(a.min_term_norm, t.norm());
    a.max_term_norm = std::max(a.max_term_norm, t.norm());
    if (t.group == "prop") {
      ++a.propagation_terms;
      if (t.hopping()) a.min_propagation_norm = std::min(a.min_propagation_norm, t.norm());
    } else if (t.group == "in") {
      ++a.input_terms;
    } else {
      ++a.graph_terms;
    }
  }
  return a;
}

/// Full qubit-space matrix of a term listing at parameter s; register qubits first, then the
/// n computation qubits. Intended for tiny cross-checks only.
inline CMatrix materialize(const StandardGraphHamiltonian& h, const LocalEncoding& enc, double s) {
  const int m = enc.register_qubits;
  const int n = h.n();
  if (m + n > 12) throw NumericError("materialize: full qubit space too large");
  const Eigen::Index cd = Eigen::Index{1} << n;
  const std::uint64_t rd = std::uint64_t{1} << m;
  CMatrix out = CMatrix::Zero(static_cast<Eigen::Index>(rd) * cd, static_cast<Eigen::Index>(rd) * cd);
  for (const auto& term : enc.terms) {
    CMatrix comp;
    switch (term.comp) {
      case CompOp::Identity: comp = CMatrix::Identity(cd, cd); break;
      case CompOp::Step: comp = h.circuit.at(s, term.step); break;
      case CompOp::ProjectorOne: {
        CMatrix p1 = CMatrix::Zero(2, 2);
        p1(1, 1) = 1.0;
        comp = embed_operator(p1, term.comp_qubits, n);
        break;
      }
      case CompOp::BasisProjector:
        comp = CMatrix::Zero(cd, cd);
        comp(static_cast<Eigen::Index>(term.basis_state), static_cast<Eigen::Index>(term.basis_state)) = 1.0;
        break;
    }
    std::uint64_t support = 0, ket = 0, bra = 0;
    for (std::size_t k = 0; k < term.register_qubits.size(); ++k) {
      const std::uint64_t bit = std::uint64_t{1} << (m - 1 - term.register_qubits[k]);
      support |= bit;
      if (term.ket[k] == '1') ket |= bit;
      if (term.bra[k] == '1') bra |= bit;
    }
    for (std::uint64_t r = 0; r < rd; ++r) {
      if ((r & support) != bra) continue;
      const std::uint64_t r2 = (r & ~support) | ket;
      const auto row = static_cast<Eigen::Index>(r2) * cd, col = static_cast<Eigen::Index>(r) * cd;
      out.block(row, col, cd, cd) += term.coefficient * comp;
      if (term.hopping()) out.block(col, row, cd, cd) += term.coefficient * comp.adjoint();
    }
  }
  return out;
}

/// Row/column indices of D inside the materialized space, in network order v * 2^n + x.
inline std::vector<Eigen::Index> proper_state_indices(const StandardGraphHamiltonian& h, const LocalEncoding& enc) {
  const Eigen::Index cd = Eigen::Index{1} << h.n();
  std::vector<Eigen::Index> idx;
  for (auto r : enc.vertex_state)
    for (Eigen::Index x = 0; x < cd; ++x) idx.push_back(static_cast<Eigen::Index>(r) * cd + x);
  return idx;
}

}  // namespace adiagraph
