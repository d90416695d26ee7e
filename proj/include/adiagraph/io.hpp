#pragma once

// JSON readers and writers for graphs, circuits, networks and construction specs.
//
//   graph:        {"vertices":[labels], "edges":[{"u":label,"v":label,"w":real}]}, loops as u == v
//   circuit:      {"n":int, "gates":[{"kind":"CNOT","targets":[0,1]},
//                  {"kind":"CUSTOM","targets":[1],"matrix":[[re,im],...]}]}   (row-major)
//   network:      graph + {"time_map":{label:int}, "circuit":circuit}
//   construction: {"construction":"kitaev|hypercube|path_contracted|covered_path",
//                  "circuit":circuit, "L_i":int, "L_f":int | "L_prime":int, "valid_inputs":[bitstrings]}

#include <adiagraph/hamiltonian.hpp>

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <string>

namespace adiagraph {

/// Malformed or inconsistent input files.
class ParseError : public InputError {
 public:
  using InputError::InputError;
};

using json = nlohmann::json;

namespace detail {

template <class F>
auto parsing(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ParseError&) {
    throw;
  } catch (const json::exception& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  } catch (const InputError& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  }
}

inline const json& field(const json& j, const char* key) {
  if (!j.is_object()) throw ParseError("expected a JSON object");
  const auto it = j.find(key);
  if (it == j.end()) throw ParseError(std::string("missing field '") + key + "'");
  return *it;
}

}  // namespace detail

inline json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str());
}

// ---------------------------------------------------------------------------------------
// Graphs

inline json graph_to_json(const WeightedGraph& g) {
  json j;
  j["vertices"] = g.labels();
  j["edges"] = json::array();
  for (int v = 0; v < g.size(); ++v)
    for (const auto& [u, w] : g.neighbors(v))
      if (u >= v) j["edges"].push_back({{"u", g.label(v)}, {"v", g.label(u)}, {"w", w}});
  return j;
}

inline WeightedGraph graph_from_json(const json& j) {
  return detail::parsing("graph", [&] {
    WeightedGraph g;
    for (const auto& label : detail::field(j, "vertices")) {
      const auto s = label.get<std::string>();
      if (g.has_vertex(s)) throw ParseError("duplicate vertex '" + s + "'");
      g.add_vertex(s);
    }
    for (const auto& e : detail::field(j, "edges")) {
      const auto u = detail::field(e, "u").get<std::string>();
      const auto v = detail::field(e, "v").get<std::string>();
      const double w = detail::field(e, "w").get<double>();
      if (!g.has_vertex(u) || !g.has_vertex(v)) throw ParseError("edge (" + u + "," + v + ") names an unknown vertex");
      if (!(w > 0.0) || !std::isfinite(w)) throw ParseError("edge (" + u + "," + v + ") needs a positive finite weight");
      if (g.weight(g.index(u), g.index(v)) != 0.0) throw ParseError("edge (" + u + "," + v + ") listed twice");
      g.set_weight(g.index(u), g.index(v), w);
    }
    return g;
  });
}

// ---------------------------------------------------------------------------------------
// Circuits

inline json circuit_to_json(const QuantumCircuit& c) {
  json j;
  j["n"] = c.n;
  j["gates"] = json::array();
  for (const auto& g : c.gates) {
    json jg{{"kind", to_string(g.kind)}, {"targets", g.targets}};
    if (g.kind == GateKind::CUSTOM) {
      json m = json::array();
      for (Eigen::Index r = 0; r < g.custom.rows(); ++r)
        for (Eigen::Index k = 0; k < g.custom.cols(); ++k) m.push_back({g.custom(r, k).real(), g.custom(r, k).imag()});
      jg["matrix"] = m;
    }
    j["gates"].push_back(jg);
  }
  return j;
}

inline QuantumCircuit circuit_from_json(const json& j) {
  return detail::parsing("circuit", [&] {
    QuantumCircuit c;
    c.n = detail::field(j, "n").get<int>();
    for (const auto& jg : detail::field(j, "gates")) {
      Gate g;
      g.kind = gate_kind_from_string(detail::field(jg, "kind").get<std::string>());
      if (jg.contains("targets")) g.targets = jg["targets"].get<std::vector<int>>();
      if (g.kind == GateKind::CUSTOM) {
        const auto& m = detail::field(jg, "matrix");
        const Eigen::Index dim = Eigen::Index{1} << g.targets.size();
        if (static_cast<Eigen::Index>(m.size()) != dim * dim)
          throw ParseError("CUSTOM matrix needs " + std::to_string(dim * dim) + " [re,im] entries");
        g.custom.resize(dim, dim);
        for (Eigen::Index k = 0; k < dim * dim; ++k) {
          const auto& z = m[static_cast<std::size_t>(k)];
          if (!z.is_array() || z.size() != 2) throw ParseError("CUSTOM matrix entries are [re, im] pairs");
          g.custom(k / dim, k % dim) = cplx(z[0].get<double>(), z[1].get<double>());
        }
      }
      c.gates.push_back(std::move(g));
    }
    c.validate();
    return c;
  });
}

// ---------------------------------------------------------------------------------------
// Networks

inline json network_to_json(const ParallelTransportNetwork& ptn) {
  json j = graph_to_json(ptn.graph());
  json tm = json::object();
  for (int v = 0; v < ptn.graph().size(); ++v) tm[ptn.graph().label(v)] = ptn.time_of(v);
  j["time_map"] = tm;
  j["circuit"] = circuit_to_json(ptn.circuit().base());
  return j;
}

inline ParallelTransportNetwork network_from_json(const json& j) {
  return detail::parsing("network", [&] {
    WeightedGraph g = graph_from_json(j);
    const auto& tm = detail::field(j, "time_map");
    std::vector<int> time(g.size(), -1);
    for (const auto& [label, t] : tm.items()) {
      if (!g.has_vertex(label)) throw ParseError("time map names unknown vertex '" + label + "'");
      time[g.index(label)] = t.get<int>();
    }
    for (int v = 0; v < g.size(); ++v)
      if (time[v] < 0) throw ParseError("time map misses vertex '" + g.label(v) + "'");
    ParallelTransportNetwork ptn(std::move(g), std::move(time), TimeDependentCircuit(circuit_from_json(detail::field(j, "circuit"))));
    require_valid(ptn);
    return ptn;
  });
}

// ---------------------------------------------------------------------------------------
// Construction specs

struct ConstructionSpec {
  Construction construction = Construction::Kitaev;
  QuantumCircuit circuit;
  std::optional<int> L_i, L_f, L_prime;
  std::vector<std::uint64_t> valid_inputs = default_valid_inputs();
};

inline ConstructionSpec construction_spec_from_json(const json& j) {
  return detail::parsing("construction spec", [&] {
    ConstructionSpec spec;
    spec.construction = construction_from_string(detail::field(j, "construction").get<std::string>());
    spec.circuit = circuit_from_json(detail::field(j, "circuit"));
    if (j.contains("L_i")) spec.L_i = j["L_i"].get<int>();
    if (j.contains("L_f")) spec.L_f = j["L_f"].get<int>();
    if (j.contains("L_prime")) spec.L_prime = j["L_prime"].get<int>();
    if (j.contains("valid_inputs")) {
      spec.valid_inputs.clear();
      for (const auto& b : j["valid_inputs"]) {
        const auto s = b.get<std::string>();
        if (static_cast<int>(s.size()) != spec.circuit.n)
          throw ParseError("valid input '" + s + "' must have " + std::to_string(spec.circuit.n) + " bits");
        spec.valid_inputs.push_back(parse_bitstring(s));
      }
    }
    const bool pads = spec.L_i || spec.L_f;
    if (pads && (!spec.L_i || !spec.L_f)) throw ParseError("L_i and L_f must be given together");
    if (pads == spec.L_prime.has_value()) throw ParseError("give either L_i and L_f or L_prime");
    if (pads && spec.construction != Construction::Kitaev && spec.construction != Construction::CoveredPath)
      throw ParseError(to_string(spec.construction) + " takes L_prime, not explicit pads");
    if (spec.L_prime && spec.construction == Construction::Kitaev) throw ParseError("kitaev takes L_i and L_f");
    return spec;
  });
}

inline json construction_spec_to_json(const ConstructionSpec& spec) {
  json j{{"construction", to_string(spec.construction)}, {"circuit", circuit_to_json(spec.circuit)}};
  if (spec.L_i) j["L_i"] = *spec.L_i;
  if (spec.L_f) j["L_f"] = *spec.L_f;
  if (spec.L_prime) j["L_prime"] = *spec.L_prime;
  j["valid_inputs"] = json::array();
  for (auto x : spec.valid_inputs) j["valid_inputs"].push_back(bitstring(x, spec.circuit.n));
  return j;
}

inline StandardGraphHamiltonian build(const ConstructionSpec& spec) {
  const auto& c = spec.circuit;
  const auto& S = spec.valid_inputs;
  switch (spec.construction) {
    case Construction::Kitaev: return kitaev(c, *spec.L_i, *spec.L_f, S);
    case Construction::Hypercube: return hypercube(c, *spec.L_prime, S);
    case Construction::PathContracted: return path_contracted_hypercube(c, *spec.L_prime, S);
    case Construction::CoveredPath:
      return spec.L_prime ? covered_path_hypercube(c, *spec.L_prime, S)
                          : covered_path_hypercube_padded(c, *spec.L_i, *spec.L_f, S);
  }
  throw InputError("unknown construction");
}

}  // namespace adiagraph
