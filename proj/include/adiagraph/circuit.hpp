#pragma once

// Gate library, local embedding, identity extension and the time-dependent circuit
// U_t(s) = exp(i s h_t).

#include <adiagraph/numerics.hpp>

#include <cstdint>
#include <set>
#include <string>
#include <vector>

namespace adiagraph {

enum class GateKind { I, H, T, CNOT, TOF, CUSTOM };

inline std::string to_string(GateKind k) {
  switch (k) {
    case GateKind::I: return "I";
    case GateKind::H: return "H";
    case GateKind::T: return "T";
    case GateKind::CNOT: return "CNOT";
    case GateKind::TOF: return "TOF";
    case GateKind::CUSTOM: return "CUSTOM";
  }
  return "?";
}

inline GateKind gate_kind_from_string(const std::string& s) {
  for (GateKind k : {GateKind::I, GateKind::H, GateKind::T, GateKind::CNOT, GateKind::TOF, GateKind::CUSTOM})
    if (to_string(k) == s) return k;
  throw InputError("unknown gate kind '" + s + "'");
}

/// A gate acting on an ordered list of qubits. The identity gate has no targets.
struct Gate {
  GateKind kind = GateKind::I;
  std::vector<int> targets;
  CMatrix custom;  // only for CUSTOM

  static Gate identity() { return {}; }
  static Gate h(int q) { return {GateKind::H, {q}, {}}; }
  static Gate t(int q) { return {GateKind::T, {q}, {}}; }
  static Gate cnot(int control, int target) { return {GateKind::CNOT, {control, target}, {}}; }
  static Gate toffoli(int c0, int c1, int target) { return {GateKind::TOF, {c0, c1, target}, {}}; }
  static Gate custom_gate(std::vector<int> targets, CMatrix m) {
    return {GateKind::CUSTOM, std::move(targets), std::move(m)};
  }

  bool is_identity() const { return kind == GateKind::I; }
};

inline int arity(GateKind k) {
  switch (k) {
    case GateKind::I: return 0;
    case GateKind::H:
    case GateKind::T: return 1;
    case GateKind::CNOT: return 2;
    case GateKind::TOF: return 3;
    case GateKind::CUSTOM: return -1;
  }
  return -1;
}

inline void validate_gate(const Gate& g) {
  const int k = arity(g.kind);
  const int m = static_cast<int>(g.targets.size());
  if (g.kind == GateKind::CUSTOM) {
    if (m < 1 || m > 2) throw InputError("CUSTOM gates act on one or two qubits");
    const Eigen::Index dim = Eigen::Index{1} << m;
    if (g.custom.rows() != dim || g.custom.cols() != dim)
      throw InputError("CUSTOM gate matrix must be " + std::to_string(dim) + "x" + std::to_string(dim));
    if (const double d = unitarity_defect(g.custom); d > 1e-10)
      throw InputError("CUSTOM gate matrix is not unitary (max |U^dagger U - I| = " + std::to_string(d) + ")");
  } else if (m != k) {
    throw InputError(to_string(g.kind) + " gate expects " + std::to_string(k) + " targets, got " +
                     std::to_string(m));
  }
  std::set<int> distinct(g.targets.begin(), g.targets.end());
  if (static_cast<int>(distinct.size()) != m) throw InputError("gate targets must be distinct");
  for (int q : g.targets)
    if (q < 0) throw InputError("negative qubit index");
}

/// The gate's matrix on its own targets, first target most significant.
inline CMatrix gate_matrix(const Gate& g) {
  validate_gate(g);
  const double r = 1.0 / std::sqrt(2.0);
  switch (g.kind) {
    case GateKind::I: return CMatrix::Identity(1, 1);
    case GateKind::H: {
      CMatrix m(2, 2);
      m << r, r, r, -r;
      return m;
    }
    case GateKind::T: {
      CMatrix m = CMatrix::Zero(2, 2);
      m(0, 0) = 1.0;
      m(1, 1) = std::polar(1.0, pi / 4.0);
      return m;
    }
    case GateKind::CNOT: {
      CMatrix m = CMatrix::Zero(4, 4);
      m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1.0;
      return m;
    }
    case GateKind::TOF: {
      CMatrix m = CMatrix::Identity(8, 8);
      m(6, 6) = m(7, 7) = 0.0;
      m(6, 7) = m(7, 6) = 1.0;
      return m;
    }
    case GateKind::CUSTOM: return g.custom;
  }
  return {};
}

/// Trivial extension of a local operator on the given targets to n qubits. Qubit 0 is the
/// most significant bit of a basis-state index.
inline CMatrix embed_operator(const CMatrix& local, const std::vector<int>& targets, int n) {
  const int m = static_cast<int>(targets.size());
  if (local.rows() != (Eigen::Index{1} << m) || local.cols() != local.rows())
    throw InputError("local operator dimension does not match its target count");
  for (int q : targets)
    if (q < 0 || q >= n)
      throw InputError("qubit " + std::to_string(q) + " out of range for " + std::to_string(n) + " qubits");
  const std::uint64_t dim = std::uint64_t{1} << n;
  std::uint64_t tmask = 0;
  for (int q : targets) tmask |= std::uint64_t{1} << (n - 1 - q);
  auto local_index = [&](std::uint64_t x) {
    std::uint64_t idx = 0;
    for (int q : targets) idx = (idx << 1) | (x >> (n - 1 - q) & 1u);
    return idx;
  };
  auto scatter = [&](std::uint64_t rest, std::uint64_t idx) {
    std::uint64_t x = rest;
    for (int k = m - 1; k >= 0; --k, idx >>= 1)
      if (idx & 1u) x |= std::uint64_t{1} << (n - 1 - targets[k]);
    return x;
  };
  CMatrix out = CMatrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::uint64_t col = 0; col < dim; ++col) {
    const std::uint64_t rest = col & ~tmask;
    const std::uint64_t j = local_index(col);
    for (Eigen::Index i = 0; i < local.rows(); ++i) {
      const cplx v = local(i, static_cast<Eigen::Index>(j));
      if (v != cplx(0.0)) out(static_cast<Eigen::Index>(scatter(rest, i)), static_cast<Eigen::Index>(col)) = v;
    }
  }
  return out;
}

inline CMatrix embed_local(const Gate& g, int n) { return embed_operator(gate_matrix(g), g.targets, n); }

/// Gate sequence on n qubits; gates[t-1] is applied at time step t.
struct QuantumCircuit {
  int n = 0;
  std::vector<Gate> gates;

  int length() const { return static_cast<int>(gates.size()); }

  void validate() const {
    if (n < 0 || n > 12) throw InputError("qubit count must lie in [0, 12]");
    for (const auto& g : gates) {
      validate_gate(g);
      for (int q : g.targets)
        if (q >= n) throw InputError("gate target " + std::to_string(q) + " out of range for " + std::to_string(n) + " qubits");
    }
  }
};

/// U_L ... U_1.
inline CMatrix circuit_unitary(const QuantumCircuit& c) {
  c.validate();
  const Eigen::Index dim = Eigen::Index{1} << c.n;
  CMatrix u = CMatrix::Identity(dim, dim);
  for (const auto& g : c.gates)
    if (!g.is_identity()) u = embed_local(g, c.n) * u;
  return u;
}

inline QuantumCircuit identity_extend(const QuantumCircuit& c, int L_i, int L_f) {
  if (L_i < 0 || L_f < 0) throw InputError("identity pad counts must be nonnegative");
  QuantumCircuit out;
  out.n = c.n;
  out.gates.assign(L_i, Gate::identity());
  out.gates.insert(out.gates.end(), c.gates.begin(), c.gates.end());
  out.gates.insert(out.gates.end(), L_f, Gate::identity());
  return out;
}

/// The circuit C(s) whose gates are U_t(s) = exp(i s h_t) with principal-branch generators,
/// so U_t(0) = I and U_t(1) = U_t.
class TimeDependentCircuit {
 public:
  TimeDependentCircuit() = default;

  explicit TimeDependentCircuit(QuantumCircuit base) : base_(std::move(base)) {
    base_.validate();
    const Eigen::Index dim = Eigen::Index{1} << base_.n;
    for (const auto& g : base_.gates) {
      Step st;
      if (g.is_identity()) {
        st.generator = CMatrix::Zero(dim, dim);
        st.vectors = CMatrix::Identity(dim, dim);
        st.phases = RVector::Zero(dim);
      } else {
        st.generator = log_unitary(embed_local(g, base_.n));
        const auto ed = eig_hermitian(st.generator, 1e-9);
        st.vectors = ed.vectors;
        st.phases = ed.values;
      }
      steps_.push_back(std::move(st));
    }
  }

  const QuantumCircuit& base() const { return base_; }
  int n() const { return base_.n; }
  int length() const { return base_.length(); }
  Eigen::Index dim() const { return Eigen::Index{1} << base_.n; }

  bool is_identity_step(int t) const { return step(t).phases.cwiseAbs().maxCoeff() == 0.0; }

  /// Embedded generator h_t for time step t in [1, L].
  const CMatrix& generator(int t) const { return step(t).generator; }

  /// U_t(s) on the full n-qubit space, t in [1, L].
  CMatrix at(double s, int t) const {
    const Step& st = step(t);
    CVector ph(st.phases.size());
    for (Eigen::Index k = 0; k < ph.size(); ++k) ph[k] = std::polar(1.0, s * st.phases[k]);
    return st.vectors * ph.asDiagonal() * st.vectors.adjoint();
  }

  /// U_t(s) ... U_1(s); the identity for t = 0.
  CMatrix prefix(double s, int t) const {
    CMatrix u = CMatrix::Identity(dim(), dim());
    for (int k = 1; k <= t; ++k)
      if (!is_identity_step(k)) u = at(s, k) * u;
    return u;
  }

 private:
  struct Step {
    CMatrix generator;
    CMatrix vectors;
    RVector phases;
  };

  const Step& step(int t) const {
    if (t < 1 || t > length()) throw InputError("time step " + std::to_string(t) + " outside [1, L]");
    return steps_[t - 1];
  }

  QuantumCircuit base_;
  std::vector<Step> steps_;
};

inline TimeDependentCircuit time_dependent(const QuantumCircuit& c) { return TimeDependentCircuit(c); }

}  // namespace adiagraph
