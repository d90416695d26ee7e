#pragma once

// Parallel transport networks: a weighted graph with a time map whose edges carry the
// circuit's step unitaries, acting on graph space (x) computation space.

#include <adiagraph/circuit.hpp>
#include <adiagraph/graph.hpp>

#include <string>
#include <vector>

namespace adiagraph {

/// Graph + time map + time-dependent circuit. Basis index of |v> (x) |x> is v * 2^n + x.
class ParallelTransportNetwork {
 public:
  ParallelTransportNetwork() = default;

  ParallelTransportNetwork(WeightedGraph graph, std::vector<int> time_map, TimeDependentCircuit circuit)
      : graph_(std::move(graph)), time_(std::move(time_map)), circuit_(std::move(circuit)) {
    if (static_cast<int>(time_.size()) != graph_.size())
      throw InputError("time map must assign a time step to every vertex");
  }

  const WeightedGraph& graph() const { return graph_; }
  const std::vector<int>& time_map() const { return time_; }
  int time_of(int v) const { return time_.at(v); }
  const TimeDependentCircuit& circuit() const { return circuit_; }

  int L_prime() const { return circuit_.length(); }
  int n() const { return circuit_.n(); }
  Eigen::Index comp_dim() const { return circuit_.dim(); }
  Eigen::Index dim() const { return static_cast<Eigen::Index>(graph_.size()) * comp_dim(); }

  std::vector<int> vertices_at(int t) const {
    std::vector<int> out;
    for (int v = 0; v < graph_.size(); ++v)
      if (time_[v] == t) out.push_back(v);
    return out;
  }

  /// vol(V_t) for t = 0..L'.
  std::vector<double> time_volumes() const {
    std::vector<double> vol(L_prime() + 1, 0.0);
    for (int v = 0; v < graph_.size(); ++v)
      if (time_[v] >= 0 && time_[v] <= L_prime()) vol[time_[v]] += graph_.degree(v);
    return vol;
  }

  /// The unitary carried by the directed edge v -> u.
  CMatrix edge_unitary(int v, int u, double s) const {
    const int tv = time_of(v), tu = time_of(u);
    if (tu == tv) return CMatrix::Identity(comp_dim(), comp_dim());
    if (tu == tv + 1) return circuit_.at(s, tu);
    if (tu == tv - 1) return circuit_.at(s, tv).adjoint();
    throw InputError("edge joins time steps " + std::to_string(tv) + " and " + std::to_string(tu));
  }

 private:
  WeightedGraph graph_;
  std::vector<int> time_;
  TimeDependentCircuit circuit_;
};

struct ValidationReport {
  bool ok = true;
  std::vector<std::string> violations;
};

/// Time-map edge condition, range and surjectivity onto {0..L'}, connectivity.
inline ValidationReport validate(const ParallelTransportNetwork& ptn) {
  ValidationReport rep;
  auto fail = [&](std::string msg) {
    rep.ok = false;
    rep.violations.push_back(std::move(msg));
  };
  const auto& g = ptn.graph();
  const int Lp = ptn.L_prime();
  if (g.size() < 2) fail("network needs at least two vertices");
  std::vector<bool> hit(Lp + 1, false);
  for (int v = 0; v < g.size(); ++v) {
    const int t = ptn.time_of(v);
    if (t < 0 || t > Lp)
      fail("vertex " + g.label(v) + " has time " + std::to_string(t) + " outside [0, " + std::to_string(Lp) + "]");
    else
      hit[t] = true;
  }
  for (int t = 0; t <= Lp; ++t)
    if (!hit[t]) fail("time step " + std::to_string(t) + " has no vertex (time map not surjective)");
  for (int v = 0; v < g.size(); ++v)
    for (const auto& [u, w] : g.neighbors(v))
      if (u > v && std::abs(ptn.time_of(u) - ptn.time_of(v)) > 1)
        fail("edge (" + g.label(v) + "," + g.label(u) + ") joins time steps " + std::to_string(ptn.time_of(v)) +
             " and " + std::to_string(ptn.time_of(u)));
  if (g.size() > 0 && !is_connected(g)) fail("graph is disconnected");
  return rep;
}

inline void require_valid(const ParallelTransportNetwork& ptn) {
  const auto rep = validate(ptn);
  if (!rep.ok) throw InputError("invalid parallel transport network: " + rep.violations.front());
}

/// Product of edge unitaries along a vertex sequence, first edge applied first.
inline CMatrix associated_unitary(const ParallelTransportNetwork& ptn, const std::vector<int>& path, double s = 1.0) {
  CMatrix u = CMatrix::Identity(ptn.comp_dim(), ptn.comp_dim());
  if (path.empty()) throw InputError("empty path");
  for (std::size_t k = 1; k < path.size(); ++k) {
    if (ptn.graph().weight(path[k - 1], path[k]) <= 0.0)
      throw InputError("path step " + ptn.graph().label(path[k - 1]) + " -> " + ptn.graph().label(path[k]) +
                       " is not an edge");
    u = ptn.edge_unitary(path[k - 1], path[k], s) * u;
  }
  return u;
}

namespace detail {
inline void require_cap(Eigen::Index dim, const char* what) {
  if (dim > kDenseCap)
    throw NumericError(std::string(what) + ": dimension " + std::to_string(dim) + " exceeds the dense cap " +
                       std::to_string(kDenseCap));
}
}  // namespace detail

/// Normalized Laplacian of the network with U_t replaced by U_t(s). Loops carry the identity.
inline CMatrix network_normalized_laplacian(const ParallelTransportNetwork& ptn, double s) {
  detail::require_cap(ptn.dim(), "network_normalized_laplacian");
  const auto& g = ptn.graph();
  const Eigen::Index m = ptn.comp_dim();
  const std::vector<double> d = g.degrees();
  // U_t(s) for every step, computed once.
  std::vector<CMatrix> step(ptn.L_prime() + 1);
  for (int t = 1; t <= ptn.L_prime(); ++t) step[t] = ptn.circuit().at(s, t);
  CMatrix l = CMatrix::Zero(ptn.dim(), ptn.dim());
  for (int v = 0; v < g.size(); ++v) {
    if (d[v] == 0.0) continue;
    l.block(v * m, v * m, m, m).diagonal().setConstant(1.0);
    for (const auto& [u, w] : g.neighbors(v)) {
      if (u == v) {
        l.block(v * m, v * m, m, m).diagonal().array() -= w / d[v];
        continue;
      }
      // Block (u, v) carries the unitary of the directed edge v -> u.
      const double c = -w / std::sqrt(d[v] * d[u]);
      const int tv = ptn.time_of(v), tu = ptn.time_of(u);
      auto blk = l.block(u * m, v * m, m, m);
      if (tu == tv)
        blk.diagonal().setConstant(c);
      else if (tu == tv + 1)
        blk = c * step[tu];
      else if (tu == tv - 1)
        blk = c * step[tv].adjoint();
      else
        throw InputError("edge violates the time-map condition");
    }
  }
  return l;
}

/// R = sum_v |v><v| (x) U_T(v)(s) ... U_1(s).
inline CMatrix block_rotation(const ParallelTransportNetwork& ptn, double s) {
  detail::require_cap(ptn.dim(), "block_rotation");
  const Eigen::Index m = ptn.comp_dim();
  std::vector<CMatrix> prefix(ptn.L_prime() + 1);
  prefix[0] = CMatrix::Identity(m, m);
  for (int t = 1; t <= ptn.L_prime(); ++t)
    prefix[t] = ptn.circuit().is_identity_step(t) ? prefix[t - 1] : CMatrix(ptn.circuit().at(s, t) * prefix[t - 1]);
  CMatrix r = CMatrix::Zero(ptn.dim(), ptn.dim());
  for (int v = 0; v < ptn.graph().size(); ++v) r.block(v * m, v * m, m, m) = prefix.at(ptn.time_of(v));
  return r;
}

/// (1/sqrt(vol V)) sum_v sqrt(d_v) |v> (x) U_T(v)(s) ... U_1(s) |x>.
inline CVector history_state(const ParallelTransportNetwork& ptn, double s, std::uint64_t x) {
  const Eigen::Index m = ptn.comp_dim();
  if (x >= static_cast<std::uint64_t>(m)) throw InputError("input bitstring out of range");
  const auto& g = ptn.graph();
  std::vector<CVector> prefix(ptn.L_prime() + 1);
  prefix[0] = CVector::Zero(m);
  prefix[0][static_cast<Eigen::Index>(x)] = 1.0;
  for (int t = 1; t <= ptn.L_prime(); ++t)
    prefix[t] = ptn.circuit().is_identity_step(t) ? prefix[t - 1] : CVector(ptn.circuit().at(s, t) * prefix[t - 1]);
  const double vol = g.volume();
  CVector eta = CVector::Zero(ptn.dim());
  for (int v = 0; v < g.size(); ++v) eta.segment(v * m, m) = std::sqrt(g.degree(v) / vol) * prefix.at(ptn.time_of(v));
  return eta;
}

/// The time map viewed as a contraction onto {0..L'}.
inline ContractionMap time_contraction_map(const ParallelTransportNetwork& ptn) {
  ContractionMap c;
  for (int t = 0; t <= ptn.L_prime(); ++t) c.target_labels.push_back(std::to_string(t));
  c.target_of = ptn.time_map();
  return c;
}

inline std::vector<int> identity_time_map(int Lp) {
  std::vector<int> t(Lp + 1);
  for (int k = 0; k <= Lp; ++k) t[k] = k;
  return t;
}

/// Contracts every time cluster V_t to a single vertex t.
inline ParallelTransportNetwork path_contraction(const ParallelTransportNetwork& ptn) {
  require_valid(ptn);
  return ParallelTransportNetwork(contract(ptn.graph(), time_contraction_map(ptn)), identity_time_map(ptn.L_prime()),
                                  ptn.circuit());
}

/// The weighted path covered by the network through its time map; throws when some vertex
/// sends a different total weight into a neighbouring cluster than its cluster mates.
inline ParallelTransportNetwork covered_path(const ParallelTransportNetwork& ptn) {
  require_valid(ptn);
  return ParallelTransportNetwork(covering_quotient(ptn.graph(), time_contraction_map(ptn)),
                                  identity_time_map(ptn.L_prime()), ptn.circuit());
}

}  // namespace adiagraph
