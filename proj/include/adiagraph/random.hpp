#pragma once

// Seeded fixture generators: connected random graphs, Haar unitaries, random circuits and
// networks, and PSD pairs with prescribed null spaces.
//
// Graphs are Erdos-Renyi G(N, p) with N uniform in [n_min, n_max] and, when weighted,
// edge weights uniform in [0.25, 2]; draws are rejected until connected. All generators
// take a std::mt19937_64, so a fixture is fully determined by its seed.

#include <adiagraph/ptn.hpp>

#include <algorithm>
#include <random>
#include <string>
#include <tuple>
#include <vector>

namespace adiagraph {

using Rng = std::mt19937_64;

struct RandomGraphOptions {
  int n_min = 2;
  int n_max = 30;
  double edge_probability = 0.3;
  bool weighted = true;
  double loop_probability = 0.0;
};

inline WeightedGraph random_connected_graph(Rng& rng, const RandomGraphOptions& opt = {}) {
  if (opt.n_min < 1 || opt.n_max < opt.n_min) throw InputError("bad vertex-count range");
  std::uniform_int_distribution<int> size(opt.n_min, opt.n_max);
  std::uniform_real_distribution<double> coin(0.0, 1.0), weight(0.25, 2.0);
  const int n = size(rng);
  for (;;) {
    WeightedGraph g;
    for (int v = 0; v < n; ++v) g.add_vertex("v" + std::to_string(v));
    for (int u = 0; u < n; ++u)
      for (int v = u; v < n; ++v) {
        const double p = (u == v) ? opt.loop_probability : opt.edge_probability;
        if (coin(rng) < p) g.set_weight(u, v, opt.weighted ? weight(rng) : 1.0);
      }
    if (is_connected(g)) return g;
  }
}

/// Haar-random unitary: QR of a complex Ginibre matrix with the phases of R divided out.
inline CMatrix haar_unitary(Rng& rng, Eigen::Index dim) {
  std::normal_distribution<double> gauss;
  CMatrix z(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j) z(i, j) = cplx(gauss(rng), gauss(rng));
  Eigen::HouseholderQR<CMatrix> qr(z);
  CMatrix q = qr.householderQ();
  const CMatrix r = qr.matrixQR();
  for (Eigen::Index j = 0; j < dim; ++j) {
    const cplx d = r(j, j);
    if (std::abs(d) > 0.0) q.col(j) *= d / std::abs(d);
  }
  return q;
}

inline QuantumCircuit random_circuit(Rng& rng, int n, int length) {
  if (n < 1) throw InputError("random circuits need at least one qubit");
  QuantumCircuit c;
  c.n = n;
  std::uniform_int_distribution<int> kind(0, n > 1 ? 4 : 2), qubit(0, n - 1);
  for (int k = 0; k < length; ++k) {
    const int a = qubit(rng);
    int b = qubit(rng);
    while (n > 1 && b == a) b = qubit(rng);
    switch (kind(rng)) {
      case 0: c.gates.push_back(Gate::h(a)); break;
      case 1: c.gates.push_back(Gate::t(a)); break;
      case 2: c.gates.push_back(Gate::custom_gate({a}, haar_unitary(rng, 2))); break;
      case 3: c.gates.push_back(Gate::cnot(a, b)); break;
      default: c.gates.push_back(Gate::custom_gate({a, b}, haar_unitary(rng, 4))); break;
    }
  }
  return c;
}

/// Random valid network: L' in [1, max_steps], every cluster V_t nonempty, edges only
/// inside a cluster or between neighbouring clusters, rejected until connected.
inline ParallelTransportNetwork random_network(Rng& rng, int max_vertices, int n, int max_steps = 4) {
  std::uniform_int_distribution<int> steps(1, std::max(1, std::min(max_steps, max_vertices - 1)));
  const int Lp = steps(rng);
  std::uniform_int_distribution<int> extra(0, max_vertices - (Lp + 1));
  const int nv = Lp + 1 + extra(rng);
  std::uniform_int_distribution<int> any_t(0, Lp);
  std::vector<int> time(nv);
  for (int v = 0; v < nv; ++v) time[v] = v <= Lp ? v : any_t(rng);
  std::uniform_real_distribution<double> coin(0.0, 1.0), weight(0.25, 2.0);
  for (;;) {
    WeightedGraph g;
    for (int v = 0; v < nv; ++v) g.add_vertex("v" + std::to_string(v));
    for (int u = 0; u < nv; ++u)
      for (int v = u; v < nv; ++v) {
        if (std::abs(time[u] - time[v]) > 1) continue;
        const double p = (u == v) ? 0.15 : 0.5;
        if (coin(rng) < p) g.set_weight(u, v, weight(rng));
      }
    if (!is_connected(g)) continue;
    return ParallelTransportNetwork(std::move(g), time, TimeDependentCircuit(random_circuit(rng, n, Lp)));
  }
}

/// Random surjective contraction onto k target vertices.
inline ContractionMap random_contraction(Rng& rng, int source_size, int k) {
  if (k < 1 || k > source_size) throw InputError("contraction target count out of range");
  std::vector<int> perm(source_size);
  for (int v = 0; v < source_size; ++v) perm[v] = v;
  std::shuffle(perm.begin(), perm.end(), rng);
  ContractionMap c;
  c.target_of.assign(source_size, 0);
  std::uniform_int_distribution<int> target(0, k - 1);
  for (int i = 0; i < source_size; ++i) c.target_of[perm[i]] = i < k ? i : target(rng);
  for (int t = 0; t < k; ++t) c.target_labels.push_back("c" + std::to_string(t));
  return c;
}

struct PsdPair {
  CMatrix h1, h2;
  CMatrix null1, null2;  // orthonormal bases of the null spaces
};

/// Two PSD matrices whose null spaces share `common` directions and have `k1`, `k2` further
/// random directions each; nonzero eigenvalues uniform in [0.1, 2].
inline PsdPair random_psd_pair(Rng& rng, Eigen::Index dim, int common, int k1, int k2) {
  if (common + k1 + k2 >= dim || k2 < 1 || common + k1 < 1) throw InputError("null-space dimensions do not fit");
  std::uniform_real_distribution<double> ev(0.1, 2.0);
  const CMatrix frame = haar_unitary(rng, dim);
  const CMatrix shared = frame.leftCols(common);
  auto make = [&](const CMatrix& extra_dirs) {
    CMatrix null(dim, common + extra_dirs.cols());
    null << shared, extra_dirs;
    // Rotate a random basis of the complement into the eigenbasis.
    const CMatrix p = CMatrix::Identity(dim, dim) - null * null.adjoint();
    const CMatrix range = orthonormal_basis(p * haar_unitary(rng, dim));
    RVector lam(range.cols());
    for (Eigen::Index i = 0; i < lam.size(); ++i) lam[i] = ev(rng);
    CMatrix h = range * lam.cast<cplx>().asDiagonal() * range.adjoint();
    return std::pair{CMatrix(0.5 * (h + h.adjoint())), null};
  };
  // The extra directions of N1 and N2 mix the remaining frame columns, so they overlap
  // at a random angle without sharing further vectors.
  const CMatrix rest = frame.rightCols(dim - common);
  const CMatrix mix = haar_unitary(rng, dim - common);
  PsdPair out;
  std::tie(out.h1, out.null1) = make(rest.leftCols(k1));
  std::tie(out.h2, out.null2) = make(orthonormal_basis(rest * mix.leftCols(k2)));
  return out;
}

}  // namespace adiagraph
