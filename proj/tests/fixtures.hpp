#pragma once

// Seeded fixture families shared by unit and acceptance tests.

#include <adiagraph/hamiltonian.hpp>
#include <adiagraph/random.hpp>

#include <vector>

namespace fixtures {

using namespace adiagraph;

inline constexpr std::uint64_t kGraphSeed = 20240601;

/// Connected random graphs: unweighted and weighted draws alternate, some with loops.
inline std::vector<WeightedGraph> random_graphs(int count, int n_max, std::uint64_t seed = kGraphSeed) {
  Rng rng(seed);
  std::vector<WeightedGraph> out;
  for (int k = 0; k < count; ++k) {
    RandomGraphOptions opt;
    opt.n_min = 2;
    opt.n_max = n_max;
    opt.edge_probability = 0.15 + 0.5 * (k % 5) / 4.0;
    opt.weighted = k % 2 == 1;
    opt.loop_probability = k % 3 == 0 ? 0.1 : 0.0;
    out.push_back(random_connected_graph(rng, opt));
  }
  return out;
}

inline QuantumCircuit bell_circuit() {
  QuantumCircuit c;
  c.n = 2;
  c.gates = {Gate::h(0), Gate::cnot(0, 1)};
  return c;
}

inline QuantumCircuit single_qubit_circuit(int L) {
  QuantumCircuit c;
  c.n = 1;
  for (int k = 0; k < L; ++k) c.gates.push_back(k % 2 ? Gate::t(0) : Gate::h(0));
  return c;
}

/// Kitaev fixtures with L' <= 8, n <= 2 and hypercube fixtures with L' <= 6, n = 1.
inline std::vector<StandardGraphHamiltonian> angle_fixtures() {
  std::vector<StandardGraphHamiltonian> out;
  out.push_back(kitaev(single_qubit_circuit(1), 1, 1));
  out.push_back(kitaev(single_qubit_circuit(3), 2, 3));
  out.push_back(kitaev(single_qubit_circuit(2), 0, 0));
  out.push_back(kitaev(bell_circuit(), 2, 2));
  out.push_back(kitaev(bell_circuit(), 3, 3));
  out.push_back(kitaev(bell_circuit(), 1, 2, {0b00, 0b11}));
  out.push_back(hypercube(single_qubit_circuit(2), 4));
  out.push_back(hypercube(single_qubit_circuit(1), 5));
  out.push_back(hypercube(single_qubit_circuit(2), 6));
  out.push_back(hypercube(single_qubit_circuit(4), 6));
  return out;
}

}  // namespace fixtures
