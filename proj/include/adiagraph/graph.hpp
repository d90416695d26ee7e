#pragma once

// Weighted graphs, their matrices and spectra, expansion quantities, bitstring Cayley
// graphs, contraction and covering.

#include <adiagraph/numerics.hpp>

#include <bit>
#include <cstdint>
#include <deque>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace adiagraph {

/// Undirected graph with a symmetric nonnegative weight function; loops allowed.
/// Vertices carry opaque string labels and are addressed by dense indices.
class WeightedGraph {
 public:
  WeightedGraph() = default;

  /// Graph on n vertices labelled "0", ..., "n-1", no edges.
  explicit WeightedGraph(int n) {
    for (int v = 0; v < n; ++v) add_vertex(std::to_string(v));
  }

  int add_vertex(const std::string& label) {
    if (index_.count(label)) throw InputError("duplicate vertex label '" + label + "'");
    const int id = size();
    labels_.push_back(label);
    index_.emplace(label, id);
    adj_.emplace_back();
    return id;
  }

  /// Sets w(u,v) = w(v,u) = w; a zero weight removes the edge.
  void set_weight(int u, int v, double w) {
    check(u);
    check(v);
    if (!(w >= 0.0) || !std::isfinite(w)) throw InputError("edge weights must be finite and nonnegative");
    if (w == 0.0) {
      adj_[u].erase(v);
      adj_[v].erase(u);
      return;
    }
    adj_[u][v] = w;
    adj_[v][u] = w;
  }

  void add_weight(int u, int v, double w) { set_weight(u, v, weight(u, v) + w); }

  int size() const { return static_cast<int>(labels_.size()); }
  const std::string& label(int v) const {
    check(v);
    return labels_[v];
  }
  const std::vector<std::string>& labels() const { return labels_; }

  bool has_vertex(const std::string& label) const { return index_.count(label) > 0; }
  int index(const std::string& label) const {
    auto it = index_.find(label);
    if (it == index_.end()) throw InputError("unknown vertex '" + label + "'");
    return it->second;
  }

  double weight(int u, int v) const {
    check(u);
    check(v);
    auto it = adj_[u].find(v);
    return it == adj_[u].end() ? 0.0 : it->second;
  }

  /// Neighbours of v with weights, including v itself when it carries a loop.
  const std::map<int, double>& neighbors(int v) const {
    check(v);
    return adj_[v];
  }

  /// d_v: sum of incident weights, the loop counted once.
  double degree(int v) const {
    double d = 0.0;
    for (const auto& [u, w] : neighbors(v)) d += w;
    return d;
  }

  std::vector<double> degrees() const {
    std::vector<double> d(size());
    for (int v = 0; v < size(); ++v) d[v] = degree(v);
    return d;
  }

  double volume() const {
    double s = 0.0;
    for (int v = 0; v < size(); ++v) s += degree(v);
    return s;
  }

  double volume(const std::vector<int>& set) const {
    double s = 0.0;
    for (int v : set) s += degree(v);
    return s;
  }

  /// Number of undirected edges, loops included.
  int edge_count() const {
    int e = 0;
    for (int v = 0; v < size(); ++v)
      for (const auto& [u, w] : adj_[v])
        if (u >= v) ++e;
    return e;
  }

  bool operator==(const WeightedGraph& o) const { return labels_ == o.labels_ && adj_ == o.adj_; }

 private:
  void check(int v) const {
    if (v < 0 || v >= size()) throw InputError("vertex index " + std::to_string(v) + " out of range");
  }

  std::vector<std::string> labels_;
  std::unordered_map<std::string, int> index_;
  std::vector<std::map<int, double>> adj_;
};

inline double degree(const WeightedGraph& g, const std::string& v) { return g.degree(g.index(v)); }

inline RMatrix adjacency_matrix(const WeightedGraph& g) {
  RMatrix a = RMatrix::Zero(g.size(), g.size());
  for (int v = 0; v < g.size(); ++v)
    for (const auto& [u, w] : g.neighbors(v)) a(v, u) = w;
  return a;
}

/// Standard Laplacian T - A.
inline RMatrix laplacian(const WeightedGraph& g) {
  RMatrix l = -adjacency_matrix(g);
  for (int v = 0; v < g.size(); ++v) l(v, v) += g.degree(v);
  return l;
}

/// T^{-1/2} (T - A) T^{-1/2}, with T^{-1} taken as 0 on isolated vertices.
inline RMatrix normalized_laplacian(const WeightedGraph& g) {
  const int n = g.size();
  const std::vector<double> d = g.degrees();
  RMatrix l = RMatrix::Zero(n, n);
  for (int v = 0; v < n; ++v) {
    if (d[v] == 0.0) continue;
    l(v, v) = 1.0;
    for (const auto& [u, w] : g.neighbors(v)) {
      if (u == v)
        l(v, v) -= w / d[v];
      else
        l(v, u) = -w / std::sqrt(d[v] * d[u]);
    }
  }
  return l;
}

/// Hop distances from a set of sources; -1 marks unreachable vertices.
inline std::vector<int> hop_distances(const WeightedGraph& g, const std::vector<int>& sources) {
  std::vector<int> dist(g.size(), -1);
  std::deque<int> queue;
  for (int s : sources) {
    if (dist.at(s) != 0) {
      dist[s] = 0;
      queue.push_back(s);
    }
  }
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    for (const auto& [u, w] : g.neighbors(v)) {
      if (dist[u] < 0) {
        dist[u] = dist[v] + 1;
        queue.push_back(u);
      }
    }
  }
  return dist;
}

inline bool is_connected(const WeightedGraph& g) {
  if (g.size() == 0) return false;
  for (int d : hop_distances(g, {0}))
    if (d < 0) return false;
  return true;
}

inline void require_connected(const WeightedGraph& g, const char* what) {
  if (!is_connected(g))
    throw NumericError(std::string(what) +
                       ": graph is disconnected, so eigenvalue 0 is degenerate and the gap vanishes");
}

/// Second-smallest eigenvalue of the normalized Laplacian.
inline double spectral_gap(const WeightedGraph& g) {
  if (g.size() < 2) throw NumericError("spectral_gap: need at least two vertices");
  require_connected(g, "spectral_gap");
  return eigenvalues_hermitian(normalized_laplacian(g))[1];
}

template <class Derived, class VecDerived>
double rayleigh_quotient(const Eigen::MatrixBase<Derived>& m, const Eigen::MatrixBase<VecDerived>& x) {
  const double nrm = x.squaredNorm();
  if (nrm == 0.0) throw NumericError("rayleigh_quotient: zero vector");
  return std::real(x.dot(m * x)) / nrm;  // dot conjugates its left argument
}

inline int diameter(const WeightedGraph& g) {
  require_connected(g, "diameter");
  int diam = 0;
  for (int v = 0; v < g.size(); ++v)
    for (int d : hop_distances(g, {v})) diam = std::max(diam, d);
  return diam;
}

struct ExpansionFactors {
  double cheeger = 0.0;           // h_G
  double vertex_expansion = 0.0;  // g_G
};

inline constexpr int kExpansionCap = 20;

/// Exact h_G and g_G by enumerating all nonempty proper vertex subsets. The edge boundary
/// is measured by weight, which coincides with the edge count on unweighted graphs.
inline ExpansionFactors cheeger_and_vertex_expansion(const WeightedGraph& g) {
  const int n = g.size();
  if (n < 2) throw NumericError("expansion factors need at least two vertices");
  if (n > kExpansionCap)
    throw NumericError("expansion factors are enumerated exhaustively only up to " +
                       std::to_string(kExpansionCap) + " vertices; larger graphs need a sampling estimate");
  require_connected(g, "cheeger_and_vertex_expansion");
  const std::vector<double> d = g.degrees();
  const double vol = g.volume();
  ExpansionFactors out{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  const std::uint32_t full = (n == 32) ? 0xffffffffu : ((1u << n) - 1u);
  for (std::uint32_t mask = 1; mask < full; ++mask) {
    double vol_s = 0.0;
    for (int v = 0; v < n; ++v)
      if (mask >> v & 1u) vol_s += d[v];
    double boundary = 0.0;
    std::uint32_t outer = 0;
    for (int v = 0; v < n; ++v) {
      if (!(mask >> v & 1u)) continue;
      for (const auto& [u, w] : g.neighbors(v)) {
        if (mask >> u & 1u) continue;
        boundary += w;
        outer |= 1u << u;
      }
    }
    double vol_outer = 0.0;
    for (int v = 0; v < n; ++v)
      if (outer >> v & 1u) vol_outer += d[v];
    const double denom = std::min(vol_s, vol - vol_s);
    out.cheeger = std::min(out.cheeger, boundary / denom);
    out.vertex_expansion = std::min(out.vertex_expansion, vol_outer / denom);
  }
  return out;
}

// ---------------------------------------------------------------------------------------
// Builders

inline std::string bitstring(std::uint64_t x, int k) {
  std::string s(k, '0');
  for (int i = 0; i < k; ++i)
    if (x >> (k - 1 - i) & 1u) s[i] = '1';
  return s;
}

inline std::uint64_t parse_bitstring(const std::string& s) {
  if (s.empty() || s.size() > 63) throw InputError("bitstring '" + s + "' has invalid length");
  std::uint64_t x = 0;
  for (char c : s) {
    if (c != '0' && c != '1') throw InputError("bitstring '" + s + "' contains characters other than 0/1");
    x = (x << 1) | static_cast<std::uint64_t>(c == '1');
  }
  return x;
}

inline void check_cayley_generators(int k, const std::vector<std::uint64_t>& gens) {
  if (k < 1 || k > 24) throw InputError("cayley_bitstring: k must lie in [1, 24]");
  if (gens.empty()) throw InputError("cayley_bitstring: empty generator set gives a disconnected graph");
  for (auto s : gens) {
    if (s == 0) throw InputError("cayley_bitstring: the zero string is not an allowed generator");
    if (s >> k) throw InputError("cayley_bitstring: generator wider than k bits");
  }
}

/// Unweighted Cayley graph of (Z_2^k, xor) with generator set S; labels are k-bit strings,
/// most significant bit first.
inline WeightedGraph cayley_bitstring(int k, std::vector<std::uint64_t> gens) {
  check_cayley_generators(k, gens);
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  const std::uint64_t n = std::uint64_t{1} << k;
  WeightedGraph g;
  for (std::uint64_t x = 0; x < n; ++x) g.add_vertex(bitstring(x, k));
  for (std::uint64_t x = 0; x < n; ++x)
    for (auto s : gens) g.set_weight(static_cast<int>(x), static_cast<int>(x ^ s), 1.0);
  return g;
}

/// Character-theory eigenvalues 1 - (1/|S|) sum_s (-1)^<x,s>, indexed by x.
inline std::vector<double> cayley_eigenvalues(int k, std::vector<std::uint64_t> gens) {
  check_cayley_generators(k, gens);
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  const std::uint64_t n = std::uint64_t{1} << k;
  std::vector<double> ev(n);
  for (std::uint64_t x = 0; x < n; ++x) {
    double acc = 0.0;
    for (auto s : gens) acc += (std::popcount(x & s) % 2 == 0) ? 1.0 : -1.0;
    ev[x] = 1.0 - acc / static_cast<double>(gens.size());
  }
  return ev;
}

inline std::vector<std::uint64_t> unit_vectors(int k) {
  std::vector<std::uint64_t> e;
  for (int i = 0; i < k; ++i) e.push_back(std::uint64_t{1} << i);
  return e;
}

inline WeightedGraph hypercube_graph(int degree) { return cayley_bitstring(degree, unit_vectors(degree)); }

/// Path on vertices 0..L with unit edges and unit loops at both ends (2-regular).
inline WeightedGraph regular_path_graph(int L) {
  if (L < 1) throw InputError("regular path needs L >= 1");
  WeightedGraph g(L + 1);
  for (int t = 0; t < L; ++t) g.set_weight(t, t + 1, 1.0);
  g.add_weight(0, 0, 1.0);
  g.add_weight(L, L, 1.0);
  return g;
}

/// Path on vertices 0..w.size() with w(t,t+1) = w[t].
inline WeightedGraph weighted_path_graph(const std::vector<double>& w) {
  WeightedGraph g(static_cast<int>(w.size()) + 1);
  for (std::size_t t = 0; t < w.size(); ++t) g.set_weight(static_cast<int>(t), static_cast<int>(t) + 1, w[t]);
  return g;
}

inline WeightedGraph cycle_graph(int n) {
  if (n < 3) throw InputError("cycle needs at least three vertices");
  WeightedGraph g(n);
  for (int v = 0; v < n; ++v) g.set_weight(v, (v + 1) % n, 1.0);
  return g;
}

inline WeightedGraph complete_graph(int n) {
  WeightedGraph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) g.set_weight(u, v, 1.0);
  return g;
}

// ---------------------------------------------------------------------------------------
// Contraction and covering

/// Surjective vertex map from a source graph onto target_labels.
struct ContractionMap {
  std::vector<int> target_of;  // indexed by source vertex
  std::vector<std::string> target_labels;

  int target_count() const { return static_cast<int>(target_labels.size()); }

  std::vector<std::vector<int>> fibers() const {
    std::vector<std::vector<int>> f(target_labels.size());
    for (std::size_t a = 0; a < target_of.size(); ++a) f.at(target_of[a]).push_back(static_cast<int>(a));
    return f;
  }

  void validate(int source_size) const {
    if (static_cast<int>(target_of.size()) != source_size)
      throw InputError("contraction map does not cover every source vertex");
    std::vector<bool> hit(target_labels.size(), false);
    for (int x : target_of) {
      if (x < 0 || x >= target_count()) throw InputError("contraction map points outside the target set");
      hit[x] = true;
    }
    for (std::size_t x = 0; x < hit.size(); ++x)
      if (!hit[x]) throw InputError("contraction map is not surjective: '" + target_labels[x] + "' has an empty fiber");
  }
};

/// w(x,y) = sum over a in c^-1(x), b in c^-1(y) of w'(a,b). Edges inside a fiber become loops,
/// counted once per ordered pair, so degrees add up over fibers.
inline WeightedGraph contract(const WeightedGraph& g, const ContractionMap& c) {
  c.validate(g.size());
  WeightedGraph h;
  for (const auto& l : c.target_labels) h.add_vertex(l);
  std::map<std::pair<int, int>, double> acc;
  for (int a = 0; a < g.size(); ++a)
    for (const auto& [b, w] : g.neighbors(a)) {
      const int x = c.target_of[a], y = c.target_of[b];
      if (x <= y) acc[{x, y}] += w;
    }
  for (const auto& [xy, w] : acc) h.set_weight(xy.first, xy.second, w);
  return h;
}

struct CoveringReport {
  bool ok = true;
  double max_weight_defect = 0.0;      // condition (i)
  double max_regularity_defect = 0.0;  // condition (ii)
  std::vector<std::string> violations;
};

inline constexpr double kCoveringTol = 1e-9;

namespace detail {

/// sum_{b in fiber y} w'(a,b) for every source vertex a and target y.
inline std::vector<std::map<int, double>> fiber_sums(const WeightedGraph& g, const ContractionMap& c) {
  std::vector<std::map<int, double>> s(g.size());
  for (int a = 0; a < g.size(); ++a)
    for (const auto& [b, w] : g.neighbors(a)) s[a][c.target_of[b]] += w;
  return s;
}

}  // namespace detail

/// Checks that g covers h through c: the normalized fiber weight sums reproduce h, and every
/// vertex in a fiber sends the same total weight into each other fiber.
inline CoveringReport verify_covering(const WeightedGraph& g, const WeightedGraph& h, const ContractionMap& c) {
  CoveringReport rep;
  c.validate(g.size());
  if (c.target_count() != h.size()) {
    rep.ok = false;
    rep.violations.push_back("target vertex count differs from the covered graph");
    return rep;
  }
  const auto fibers = c.fibers();
  const auto sums = detail::fiber_sums(g, c);
  for (int x = 0; x < h.size(); ++x) {
    for (int y = 0; y < h.size(); ++y) {
      double total = 0.0;
      for (int a : fibers[x]) {
        auto it = sums[a].find(y);
        if (it != sums[a].end()) total += it->second;
      }
      const double expect = total / std::sqrt(double(fibers[x].size()) * double(fibers[y].size()));
      const double defect = std::abs(h.weight(x, y) - expect);
      rep.max_weight_defect = std::max(rep.max_weight_defect, defect);
      if (defect > kCoveringTol) {
        rep.ok = false;
        std::ostringstream os;
        os << "weight condition fails at (" << h.label(x) << "," << h.label(y) << "): have " << h.weight(x, y)
           << ", fibers give " << expect;
        rep.violations.push_back(os.str());
      }
    }
  }
  for (int x = 0; x < h.size(); ++x) {
    const int ref = fibers[x].front();
    for (int a : fibers[x]) {
      for (int y = 0; y < h.size(); ++y) {
        auto get = [&](int v) {
          auto it = sums[v].find(y);
          return it == sums[v].end() ? 0.0 : it->second;
        };
        const double defect = std::abs(get(a) - get(ref));
        rep.max_regularity_defect = std::max(rep.max_regularity_defect, defect);
        if (defect > kCoveringTol) {
          rep.ok = false;
          std::ostringstream os;
          os << "fiber regularity fails: vertex " << g.label(a) << " sends " << get(a) << " into fiber "
             << h.label(y) << " but " << g.label(ref) << " sends " << get(ref);
          rep.violations.push_back(os.str());
        }
      }
    }
  }
  return rep;
}

/// The unique graph covered by g through c; throws if fiber regularity fails.
inline WeightedGraph covering_quotient(const WeightedGraph& g, const ContractionMap& c) {
  c.validate(g.size());
  const auto fibers = c.fibers();
  const auto sums = detail::fiber_sums(g, c);
  for (int x = 0; x < c.target_count(); ++x) {
    const int ref = fibers[x].front();
    for (int a : fibers[x]) {
      std::map<int, double> diff = sums[a];
      for (const auto& [y, w] : sums[ref]) diff[y] -= w;
      for (const auto& [y, w] : diff)
        if (std::abs(w) > kCoveringTol) {
          std::ostringstream os;
          os << "no covered graph: vertex " << g.label(a) << " and vertex " << g.label(ref)
             << " share fiber " << c.target_labels[x] << " but send different weight into fiber "
             << c.target_labels[y];
          throw NumericError(os.str());
        }
    }
  }
  WeightedGraph h;
  for (const auto& l : c.target_labels) h.add_vertex(l);
  std::map<std::pair<int, int>, double> acc;
  for (int a = 0; a < g.size(); ++a)
    for (const auto& [y, w] : sums[a])
      if (c.target_of[a] <= y) acc[{c.target_of[a], y}] += w;
  for (const auto& [xy, w] : acc)
    h.set_weight(xy.first, xy.second,
                 w / std::sqrt(double(fibers[xy.first].size()) * double(fibers[xy.second].size())));
  return h;
}

/// Pull-back operator P = sum_x sum_{a in c^-1(x)} |c^-1(x)|^{-1/2} |x><a|.
inline RMatrix pullback_operator(const WeightedGraph& g, const ContractionMap& c) {
  c.validate(g.size());
  const auto fibers = c.fibers();
  RMatrix p = RMatrix::Zero(c.target_count(), g.size());
  for (int x = 0; x < c.target_count(); ++x)
    for (int a : fibers[x]) p(x, a) = 1.0 / std::sqrt(double(fibers[x].size()));
  return p;
}

/// Hamming-weight map of a k-bit Cayley graph onto {0..k}.
inline ContractionMap hamming_weight_map(int k) {
  ContractionMap c;
  for (int t = 0; t <= k; ++t) c.target_labels.push_back(std::to_string(t));
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << k); ++x) c.target_of.push_back(std::popcount(x));
  return c;
}

}  // namespace adiagraph
