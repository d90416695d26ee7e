#include <adiagraph/circuit.hpp>
#include <adiagraph/random.hpp>

#include <catch_amalgamated.hpp>

#include "fixtures.hpp"
#include "oracles.hpp"

using namespace adiagraph;
using Catch::Approx;

namespace {

CVector basis(Eigen::Index dim, Eigen::Index k) {
  CVector e = CVector::Zero(dim);
  e[k] = 1.0;
  return e;
}

std::vector<Gate> library_gates(Rng& rng) {
  return {Gate::h(0),
          Gate::t(0),
          Gate::cnot(0, 1),
          Gate::cnot(1, 0),
          Gate::toffoli(0, 1, 2),
          Gate::custom_gate({1}, haar_unitary(rng, 2)),
          Gate::custom_gate({2, 0}, haar_unitary(rng, 4))};
}

}  // namespace

TEST_CASE("gate matrices", "[circuit]") {
  const double r = 1 / std::sqrt(2.0);
  const CMatrix h = gate_matrix(Gate::h(0));
  CHECK(std::abs(h(0, 0) - r) < 1e-15);
  CHECK(std::abs(h(1, 1) + r) < 1e-15);
  const CMatrix t = gate_matrix(Gate::t(0));
  CHECK(std::abs(t(1, 1) - std::polar(1.0, pi / 4)) < 1e-15);
  CHECK(std::abs(t(0, 1)) == 0.0);
  const CMatrix cx = gate_matrix(Gate::cnot(0, 1));
  CHECK(max_abs(CMatrix(cx * cx - CMatrix::Identity(4, 4))) < 1e-15);
  const CMatrix tof = gate_matrix(Gate::toffoli(0, 1, 2));
  CHECK(tof(7, 6) == cplx(1.0));
  CHECK(tof(5, 5) == cplx(1.0));
}

TEST_CASE("invalid gates are rejected", "[circuit]") {
  CMatrix m = CMatrix::Identity(2, 2);
  m(0, 1) = 0.3;
  CHECK_THROWS_WITH(gate_matrix(Gate::custom_gate({0}, m)), Catch::Matchers::ContainsSubstring("unitary"));
  CHECK_THROWS_AS(gate_matrix(Gate::custom_gate({0, 1, 2}, CMatrix::Identity(8, 8))), InputError);
  CHECK_THROWS_AS(gate_matrix(Gate::custom_gate({0}, CMatrix::Identity(4, 4))), InputError);
  CHECK_THROWS_AS(gate_matrix(Gate::cnot(1, 1)), InputError);
  CHECK_THROWS_AS(gate_matrix(Gate{GateKind::H, {0, 1}, {}}), InputError);
  CHECK_THROWS_AS(gate_kind_from_string("SWAP"), InputError);
  CHECK(gate_kind_from_string("TOF") == GateKind::TOF);
}

TEST_CASE("local embedding", "[circuit]") {
  CHECK(max_abs(CMatrix(embed_local(Gate::h(0), 1) - gate_matrix(Gate::h(0)))) == 0.0);
  CHECK(max_abs(CMatrix(embed_local(Gate::identity(), 3) - CMatrix::Identity(8, 8))) == 0.0);
  // |100> -> |110>
  const CVector out = embed_local(Gate::cnot(0, 1), 3) * basis(8, 0b100);
  CHECK(std::abs(out[0b110] - 1.0) < 1e-15);
  CHECK_THROWS_WITH(embed_local(Gate::h(3), 3), Catch::Matchers::ContainsSubstring("out of range"));
}

TEST_CASE("embedding matches permutation conjugation", "[circuit][property]") {
  Rng rng(5);
  for (int n : {3, 4}) {
    for (const auto& g : library_gates(rng)) {
      const CMatrix e = embed_local(g, n);
      CHECK(max_abs(CMatrix(e - oracle::embed(gate_matrix(g), g.targets, n))) < 1e-14);
      CHECK(unitarity_defect(e) < 1e-12);
    }
  }
}

TEST_CASE("embeddings on disjoint supports commute", "[circuit][property]") {
  Rng rng(6);
  for (int rep = 0; rep < 20; ++rep) {
    const CMatrix a = embed_local(Gate::custom_gate({0, 2}, haar_unitary(rng, 4)), 4);
    const CMatrix b = embed_local(Gate::custom_gate({3, 1}, haar_unitary(rng, 4)), 4);
    CHECK(max_abs(CMatrix(a * b - b * a)) < 1e-12);
  }
}

TEST_CASE("circuit unitaries", "[circuit]") {
  QuantumCircuit empty;
  empty.n = 2;
  CHECK(max_abs(CMatrix(circuit_unitary(empty) - CMatrix::Identity(4, 4))) == 0.0);

  QuantumCircuit hh;
  hh.n = 1;
  hh.gates = {Gate::h(0), Gate::h(0)};
  CHECK(max_abs(CMatrix(circuit_unitary(hh) - CMatrix::Identity(2, 2))) < 1e-15);

  const CVector bell = circuit_unitary(fixtures::bell_circuit()) * basis(4, 0);
  const double r = 1 / std::sqrt(2.0);
  CHECK(std::abs(bell[0] - r) < 1e-15);
  CHECK(std::abs(bell[3] - r) < 1e-15);
  CHECK(std::abs(bell[1]) + std::abs(bell[2]) < 1e-15);

  QuantumCircuit wide;
  wide.n = 2;
  wide.gates = {Gate::h(2)};
  CHECK_THROWS_AS(circuit_unitary(wide), InputError);
}

TEST_CASE("identity extension", "[circuit]") {
  const auto bell = fixtures::bell_circuit();
  const auto same = identity_extend(bell, 0, 0);
  CHECK(same.length() == 2);

  QuantumCircuit empty;
  empty.n = 1;
  const auto pads = identity_extend(empty, 2, 1);
  CHECK(pads.length() == 3);
  for (const auto& g : pads.gates) CHECK(g.is_identity());

  Rng rng(8);
  for (int rep = 0; rep < 10; ++rep) {
    const auto c = random_circuit(rng, 1 + rep % 3, 1 + rep % 5);
    const auto ext = identity_extend(c, rep % 3, (rep + 1) % 4);
    CHECK(ext.length() == c.length() + rep % 3 + (rep + 1) % 4);
    CHECK(ext.gates[rep % 3].kind == c.gates[0].kind);
    CHECK(max_abs(CMatrix(circuit_unitary(ext) - circuit_unitary(c))) < 1e-10);
  }
  CHECK_THROWS_AS(identity_extend(bell, -1, 0), InputError);
}

TEST_CASE("time-dependent circuit endpoints and phase halving", "[circuit]") {
  QuantumCircuit c;
  c.n = 1;
  c.gates = {Gate::identity(), Gate::t(0), Gate::h(0)};
  const auto tdc = time_dependent(c);
  for (double s : {0.0, 0.4, 1.0}) CHECK(max_abs(CMatrix(tdc.at(s, 1) - CMatrix::Identity(2, 2))) == 0.0);
  const CMatrix half_t = tdc.at(0.5, 2);
  CHECK(std::abs(half_t(0, 0) - 1.0) < 1e-14);
  CHECK(std::abs(half_t(1, 1) - std::polar(1.0, pi / 8)) < 1e-14);
  CHECK_THROWS_AS(tdc.at(0.5, 0), InputError);
  CHECK_THROWS_AS(tdc.at(0.5, 4), InputError);
  CHECK(max_abs(CMatrix(tdc.prefix(1.0, 3) - circuit_unitary(c))) < 1e-12);
}

TEST_CASE("generators are principal, reproduce the gates and vary continuously", "[circuit][property]") {
  Rng rng(9);
  QuantumCircuit c;
  c.n = 3;
  c.gates = library_gates(rng);
  for (int rep = 0; rep < 5; ++rep) {
    const auto extra = random_circuit(rng, 3, 6);
    c.gates.insert(c.gates.end(), extra.gates.begin(), extra.gates.end());
  }
  const auto tdc = time_dependent(c);
  const double delta = 1e-4;
  for (int t = 1; t <= tdc.length(); ++t) {
    const CMatrix& h = tdc.generator(t);
    const double norm = hermitian_norm(h);
    CHECK(norm <= pi + 1e-9);
    CHECK(max_abs(CMatrix(tdc.at(1.0, t) - embed_local(c.gates[t - 1], 3))) < 1e-9);
    CHECK(max_abs(CMatrix(tdc.at(0.0, t) - CMatrix::Identity(8, 8))) < 1e-12);
    for (double s : {0.0, 0.37, 0.9}) {
      const double step = operator_norm(CMatrix(tdc.at(s + delta, t) - tdc.at(s, t)));
      CHECK(step <= norm * delta + 1e-7);
    }
  }
}
