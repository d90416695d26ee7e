#include <adiagraph/experiments.hpp>
#include <adiagraph/io.hpp>
#include <adiagraph/random.hpp>

#include <catch_amalgamated.hpp>

#include "fixtures.hpp"
#include "oracles.hpp"

using namespace adiagraph;
using Catch::Approx;
using Catch::Matchers::ContainsSubstring;

TEST_CASE("graph JSON round trip", "[io]") {
  for (const auto& g : fixtures::random_graphs(10, 12)) {
    const auto back = graph_from_json(parse_json(graph_to_json(g).dump()));
    REQUIRE(back.size() == g.size());
    CHECK(back.labels() == g.labels());
    CHECK(max_abs(RMatrix(oracle::adjacency(back) - oracle::adjacency(g))) == 0.0);
  }
  const auto loop = graph_from_json(parse_json(R"({"vertices":["a","b"],"edges":[{"u":"a","v":"a","w":0.5},
                                                  {"u":"a","v":"b","w":2}]})"));
  CHECK(loop.degree(0) == Approx(2.5));
}

TEST_CASE("graph JSON errors", "[io]") {
  CHECK_THROWS_WITH(parse_json("{not json"), ContainsSubstring("malformed JSON"));
  CHECK_THROWS_WITH(graph_from_json(parse_json(R"({"edges":[]})")), ContainsSubstring("missing field 'vertices'"));
  CHECK_THROWS_WITH(graph_from_json(parse_json(R"({"vertices":["a","a"],"edges":[]})")),
                    ContainsSubstring("duplicate vertex"));
  CHECK_THROWS_WITH(graph_from_json(parse_json(R"({"vertices":["a"],"edges":[{"u":"a","v":"z","w":1}]})")),
                    ContainsSubstring("unknown vertex"));
  CHECK_THROWS_WITH(graph_from_json(parse_json(R"({"vertices":["a","b"],"edges":[{"u":"a","v":"b","w":-1}]})")),
                    ContainsSubstring("positive finite weight"));
  CHECK_THROWS_WITH(graph_from_json(parse_json(R"({"vertices":["a","b"],"edges":[{"u":"a","v":"b","w":1},
                                                   {"u":"b","v":"a","w":1}]})")),
                    ContainsSubstring("listed twice"));
  CHECK_THROWS_AS(graph_from_json(parse_json(R"({"vertices":[1],"edges":[]})")), ParseError);
  CHECK_THROWS_AS(read_json_file("/nonexistent/graph.json"), ParseError);
}

TEST_CASE("circuit JSON round trip and errors", "[io]") {
  Rng rng(83);
  for (int rep = 0; rep < 10; ++rep) {
    auto c = random_circuit(rng, 1 + rep % 3, 4);
    c.gates.push_back(Gate::custom_gate({0}, haar_unitary(rng, 2)));
    const auto back = circuit_from_json(parse_json(circuit_to_json(c).dump()));
    CHECK(back.length() == c.length());
    CHECK(max_abs(CMatrix(circuit_unitary(back) - circuit_unitary(c))) < 1e-12);
  }
  CHECK_THROWS_WITH(circuit_from_json(parse_json(R"({"n":1,"gates":[{"kind":"SWAP","targets":[0]}]})")),
                    ContainsSubstring("SWAP"));
  CHECK_THROWS_WITH(circuit_from_json(parse_json(R"({"n":1,"gates":[{"kind":"CUSTOM","targets":[0],
                                                    "matrix":[[1,0]]}]})")),
                    ContainsSubstring("4 [re,im] entries"));
  CHECK_THROWS_WITH(circuit_from_json(parse_json(R"({"n":1,"gates":[{"kind":"CUSTOM","targets":[0],
                                                    "matrix":[[1,0],[1,0],[0,0],[1,0]]}]})")),
                    ContainsSubstring("unitary"));
  CHECK_THROWS_AS(circuit_from_json(parse_json(R"({"n":1,"gates":[{"kind":"CNOT","targets":[0,1]}]})")), ParseError);
}

TEST_CASE("network JSON round trip and errors", "[io]") {
  const auto h = kitaev(fixtures::bell_circuit(), 1, 1);
  const auto back = network_from_json(parse_json(network_to_json(h.net()).dump()));
  CHECK(back.time_map() == h.net().time_map());
  CHECK(max_abs(CMatrix(network_normalized_laplacian(back, 0.4) - network_normalized_laplacian(h.net(), 0.4))) <
        1e-12);

  auto j = network_to_json(h.net());
  j["time_map"].erase(j["time_map"].begin());
  CHECK_THROWS_WITH(network_from_json(j), ContainsSubstring("time map misses"));
  j = network_to_json(h.net());
  j["time_map"]["ghost"] = 0;
  CHECK_THROWS_WITH(network_from_json(j), ContainsSubstring("unknown vertex 'ghost'"));
  j = network_to_json(h.net());
  j["time_map"][h.net().graph().label(0)] = 3;
  CHECK_THROWS_AS(network_from_json(j), ParseError);
}

TEST_CASE("construction specs", "[io]") {
  ConstructionSpec spec;
  spec.construction = Construction::Kitaev;
  spec.circuit = fixtures::bell_circuit();
  spec.L_i = 1;
  spec.L_f = 2;
  spec.valid_inputs = {0b00, 0b11};
  const auto back = construction_spec_from_json(parse_json(construction_spec_to_json(spec).dump()));
  CHECK(back.valid_inputs == spec.valid_inputs);
  const auto h = build(back);
  CHECK(h.L_prime() == 5);
  CHECK(h.valid_inputs.size() == 2);

  const auto cube = build(construction_spec_from_json(parse_json(
      R"({"construction":"hypercube","circuit":{"n":1,"gates":[{"kind":"H","targets":[0]}]},"L_prime":3})")));
  CHECK(cube.construction == Construction::Hypercube);
  CHECK(cube.L_prime() == 3);

  const std::string c = R"("circuit":{"n":1,"gates":[]})";
  auto parse = [&](const std::string& rest) { return construction_spec_from_json(parse_json("{" + c + "," + rest + "}")); };
  CHECK_THROWS_WITH(parse(R"("construction":"kitaev","L_i":1)"), ContainsSubstring("together"));
  CHECK_THROWS_WITH(parse(R"("construction":"kitaev")"), ContainsSubstring("either"));
  CHECK_THROWS_WITH(parse(R"("construction":"kitaev","L_prime":3)"), ContainsSubstring("kitaev takes L_i and L_f"));
  CHECK_THROWS_WITH(parse(R"("construction":"hypercube","L_i":1,"L_f":1)"), ContainsSubstring("L_prime"));
  CHECK_THROWS_WITH(parse(R"("construction":"kitaev","L_i":1,"L_f":1,"valid_inputs":["01"])"),
                    ContainsSubstring("1 bits"));
  CHECK_THROWS_AS(parse(R"("construction":"spiral","L_prime":3)"), ParseError);
}

TEST_CASE("pad policies", "[experiments]") {
  CHECK(parse_pad_policy("none").lengths(5) == std::pair{5, 5});
  CHECK(parse_pad_policy("linear:2").lengths(5) == std::pair{5, 10});
  CHECK(parse_pad_policy("square").lengths(5) == std::pair{5, 25});
  CHECK(parse_pad_policy("fraction:4").lengths(16) == std::pair{8, 16});
  CHECK_THROWS_WITH(parse_pad_policy("linear"), ContainsSubstring("needs a factor"));
  CHECK_THROWS_WITH(parse_pad_policy("linear:x"), ContainsSubstring("bad pad policy factor"));
  CHECK_THROWS_AS(parse_pad_policy("linear:0"), InputError);
  CHECK_THROWS_WITH(parse_pad_policy("cubic"), ContainsSubstring("unknown pad policy"));
}

TEST_CASE("padded builds and exponent fits", "[experiments]") {
  const auto h = build_padded(Construction::Kitaev, 3, 8);
  CHECK(h.L_i == 2);
  CHECK(h.L_f == 3);
  CHECK_THROWS_AS(build_padded(Construction::Kitaev, 4, 3), InputError);

  std::vector<double> x, y;
  for (int k = 1; k <= 100; ++k) {
    x.push_back(k);
    y.push_back(k < 10 ? 1.0 : 3.0 * std::pow(k, -1.5));
  }
  CHECK(largest_decade_exponent(x, y) == Approx(-1.5).epsilon(1e-12));
  CHECK_THROWS_AS(largest_decade_exponent({}, {}), NumericError);
}

TEST_CASE("gap scaling exponents", "[experiments]") {
  const auto path = gap_scaling(Construction::Kitaev, {8, 16, 32, 64, 128});
  CHECK(path.exponent >= -2.2);
  CHECK(path.exponent <= -1.8);
  CHECK(path.rows.front().L_prime == 8);
  CHECK(path.rows.back().L_prime == 128);

  const auto cube = gap_scaling(Construction::Hypercube, {4, 6, 8, 10, 12});
  CHECK(cube.exponent == Approx(-1).margin(0.05));
  for (const auto& r : cube.rows) CHECK(r.gap == Approx(2.0 / r.L_prime).epsilon(1e-9));
}

TEST_CASE("tradeoff tables", "[experiments]") {
  const auto lin = tradeoff(Construction::Hypercube, {4, 5, 6, 7, 8, 9, 10}, parse_pad_policy("linear:2"));
  // An odd pad puts the extra identity in the final window, so odd L sit below the even trend.
  for (std::size_t k = 2; k < lin.rows.size(); k += 2) CHECK(lin.rows[k].sin2_theta < lin.rows[k - 2].sin2_theta);
  CHECK(std::exp(lin.log_sin2_slope) < 1);

  const auto cov = tradeoff(Construction::CoveredPath, {16}, parse_pad_policy("none"));
  REQUIRE(cov.rows.size() == 1);
  const double vol = covered_path_hypercube(filler_circuit(16), 16).net().graph().volume();
  CHECK(cov.rows.front().sin2_theta == Approx(4.0 / vol).epsilon(1e-12));
}

TEST_CASE("covered-path off-diagonal entries", "[experiments]") {
  const auto rows = covered_path_offdiag(100);
  REQUIRE(rows.size() == 100);
  for (const auto& r : rows) CHECK(r.entry == Approx(-r.w / std::sqrt(r.d_t * r.d_next)).epsilon(1e-12));
  for (std::size_t t = 0; t < rows.size(); ++t) CHECK(std::abs(rows[t].entry - rows[99 - t].entry) < 1e-9);
  CHECK(rows[50].entry == Approx(-0.5).margin(0.02));
  CHECK(std::abs(rows[0].entry + 0.5) > std::abs(rows[50].entry + 0.5));
  for (int t = 25; t < 75; ++t) {
    CHECK(rows[t].entry >= -0.52);
    CHECK(rows[t].entry <= -0.48);
  }
  CHECK_THROWS_AS(covered_path_offdiag(0), InputError);
}

TEST_CASE("evolve report", "[experiments]") {
  EvolveOptions opt;
  opt.epsilon = 0.3;
  opt.steps = 1 << 14;
  opt.samples = 100000;
  const auto h = kitaev(fixtures::bell_circuit(), 1, 1);
  const auto rep = evolve(h, opt);
  CHECK_FALSE(rep.projection);
  CHECK(rep.error <= 0.3);
  CHECK(rep.step_doubling_change < 1e-4);
  CHECK(std::abs(rep.p_empirical - rep.p_formula) <= 3 * rep.p_sigma + 2 * rep.error);
  for (const auto& o : rep.outcomes) CHECK(std::abs(o.measured - o.ideal) <= 3 * o.sigma + 2 * rep.error + 1e-12);

  opt.epsilon = 1e9;
  opt.steps = 4;
  opt.samples = 0;
  const auto loose = evolve(h, opt);
  CHECK(loose.T < 1e-3);
  CHECK(loose.error <= 2.0);

  const auto wide = kitaev(fixtures::single_qubit_circuit(3), 0, 0, {0, 1});
  opt.epsilon = 0.3;
  opt.steps = 2048;
  opt.samples = 1000;
  const auto proj = evolve(wide, opt);
  CHECK(proj.projection);
  CHECK(proj.error <= 0.3);
}
