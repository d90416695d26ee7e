// adiagraph: spectra, scaling tables and adiabatic runs for standard graph Hamiltonians.
// Output is CSV preceded by a "# adiagraph-csv v1 <command>" line.
// Exit codes: 0 success, 1 numeric or dimension failure, 2 input parse failure.

#include <adiagraph/experiments.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>

using namespace adiagraph;

namespace {

constexpr const char* kSchema = "# adiagraph-csv v1 ";

struct Common {
  std::uint64_t seed = 1;
  std::string out;
  double tol = kDegeneracyTol;
};

class Output {
 public:
  Output(const std::string& path, const std::string& command) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw ParseError("cannot write '" + path + "'");
    }
    os() << std::setprecision(17) << kSchema << command << '\n';
  }
  std::ostream& os() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--seed", c.seed, "Seed for every random draw");
  cmd->add_option("--out", c.out, "Write CSV to FILE instead of stdout");
  cmd->add_option("--tol", c.tol, "Degeneracy tolerance for eigenvalue multiplicities");
}

WeightedGraph builder_graph(const std::string& builder, int L) {
  if (builder == "path") return regular_path_graph(L);
  if (builder == "hypercube") return hypercube_graph(L);
  if (builder == "cycle") return cycle_graph(L);
  if (builder == "complete") return complete_graph(L);
  throw InputError("unknown builder '" + builder + "' (path, hypercube, cycle, complete)");
}

void write_rows(std::ostream& os, const std::vector<ExperimentRow>& rows) {
  os << "construction,L,L_prime,gap,sin2_theta,p,T_bound,wall_time\n";
  for (const auto& r : rows)
    os << r.construction << ',' << r.L << ',' << r.L_prime << ',' << r.gap << ',' << r.sin2_theta << ',' << r.p
       << ',' << r.T_bound << ',' << r.wall_time << '\n';
}

int run(int argc, char** argv) {
  CLI::App app{"Standard graph Hamiltonians: spectra, scaling experiments and adiabatic evolution"};
  app.require_subcommand(1);
  Common common;

  // spectrum
  auto* spectrum = app.add_subcommand("spectrum", "Normalized Laplacian spectrum of a graph");
  std::string graph_file, builder;
  int builder_L = 0;
  auto* graph_opt = spectrum->add_option("--graph", graph_file, "Graph JSON file");
  auto* builder_opt = spectrum->add_option("--builder", builder, "path | hypercube | cycle | complete");
  spectrum->add_option("--L", builder_L, "Builder size: path length, hypercube degree, vertex count");
  graph_opt->excludes(builder_opt);
  add_common(spectrum, common);

  // gap-scaling
  auto* scaling = app.add_subcommand("gap-scaling", "Spectral gap against L' with a log-log exponent fit");
  std::string construction = "kitaev";
  std::vector<int> Ls;
  double epsilon = 0.25;
  scaling->add_option("--construction", construction, "kitaev | hypercube | path_contracted | covered_path");
  scaling->add_option("--L", Ls, "Comma-separated L' values")->delimiter(',')->required();
  scaling->add_option("--epsilon", epsilon, "Target error for the T_bound column");
  add_common(scaling, common);

  // tradeoff
  auto* trade = app.add_subcommand("tradeoff", "Gap angle and output probability under an identity-pad policy");
  std::string pads = "none";
  trade->add_option("--construction", construction, "kitaev | hypercube | path_contracted | covered_path");
  trade->add_option("--L", Ls, "Comma-separated circuit lengths (L' for fraction:a)")->delimiter(',')->required();
  trade->add_option("--pads", pads, "none | linear:k | square | fraction:a");
  trade->add_option("--epsilon", epsilon, "Target error for the T_bound column");
  add_common(trade, common);

  // evolve
  auto* ev = app.add_subcommand("evolve", "Adiabatic run at the theorem's evolution time");
  std::string spec_file;
  EvolveOptions eo;
  ev->add_option("--spec", spec_file, "Construction spec JSON file")->required();
  ev->add_option("--epsilon", eo.epsilon, "Target adiabatic error");
  ev->add_option("--steps", eo.steps, "Propagation steps (the check repeats with twice as many)");
  ev->add_option("--grid", eo.grid_points, "s-grid points for the gap profile");
  ev->add_option("--samples", eo.samples, "Simulated measurements");
  add_common(ev, common);

  // offdiag
  auto* off = app.add_subcommand("offdiag", "Off-diagonal Laplacian entries of the covered path of the hypercube");
  int L_prime = 100;
  off->add_option("--L-prime", L_prime, "Hypercube degree L'");
  add_common(off, common);

  // audit
  auto* audit = app.add_subcommand("audit", "Local-term listing statistics");
  audit->add_option("--spec", spec_file, "Construction spec JSON file")->required();
  add_common(audit, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (*spectrum) {
    WeightedGraph g;
    if (!graph_file.empty())
      g = graph_from_json(read_json_file(graph_file));
    else if (!builder.empty())
      g = builder_graph(builder, builder_L);
    else
      throw InputError("spectrum needs --graph FILE or --builder NAME --L N");
    const RVector ev_values = eigenvalues_hermitian(normalized_laplacian(g));
    const auto summary = summarize_spectrum(ev_values, common.tol);
    Output out(common.out, "spectrum");
    out.os() << "index,eigenvalue,ground_multiplicity,gap\n";
    for (Eigen::Index k = 0; k < ev_values.size(); ++k)
      out.os() << k << ',' << ev_values[k] << ',' << summary.ground_multiplicity << ',' << summary.gap << '\n';
  } else if (*scaling) {
    const auto res = gap_scaling(construction_from_string(construction), Ls, epsilon);
    Output out(common.out, "gap-scaling");
    write_rows(out.os(), res.rows);
    out.os() << "# exponent," << res.exponent << '\n';
  } else if (*trade) {
    const auto res = tradeoff(construction_from_string(construction), Ls, parse_pad_policy(pads), epsilon);
    Output out(common.out, "tradeoff");
    write_rows(out.os(), res.rows);
    out.os() << "# log_sin2_slope," << res.log_sin2_slope << '\n';
  } else if (*ev) {
    eo.seed = common.seed;
    const auto h = build(construction_spec_from_json(read_json_file(spec_file)));
    const auto r = evolve(h, eo);
    Output out(common.out, "evolve");
    auto& os = out.os();
    os << "construction,dim,ground_dim,variant,T,steps,gamma_min,d1_max,d2_max,error,beta,step_doubling_change,"
          "p_formula,p_empirical,p_sigma,wall_time\n";
    os << r.construction << ',' << r.dim << ',' << r.ground_dim << ',' << (r.projection ? "projections" : "states")
       << ',' << r.T << ',' << r.steps << ',' << r.gamma_min << ',' << r.d1_max << ',' << r.d2_max << ',' << r.error
       << ',' << r.beta << ',' << r.step_doubling_change << ',' << r.p_formula << ',' << r.p_empirical << ','
       << r.p_sigma << ',' << r.wall_time << '\n';
    os << kSchema << "evolve-outcomes\n";
    os << "x,ideal,measured,sigma\n";
    for (const auto& o : r.outcomes)
      os << bitstring(o.x, h.n()) << ',' << o.ideal << ',' << o.measured << ',' << o.sigma << '\n';
  } else if (*off) {
    Output out(common.out, "offdiag");
    out.os() << "t,w,d_t,d_next,entry\n";
    for (const auto& r : covered_path_offdiag(L_prime))
      out.os() << r.t << ',' << r.w << ',' << r.d_t << ',' << r.d_next << ',' << r.entry << '\n';
  } else if (*audit) {
    const auto h = build(construction_spec_from_json(read_json_file(spec_file)));
    const auto a = local_term_audit(h);
    Output out(common.out, "audit");
    out.os() << "construction,L_prime,term_count,max_locality,min_term_norm,max_term_norm,min_propagation_norm,"
                "propagation_terms,input_terms,graph_terms\n";
    out.os() << to_string(h.construction) << ',' << h.L_prime() << ',' << a.term_count << ',' << a.max_locality << ','
             << a.min_term_norm << ',' << a.max_term_norm << ',' << a.min_propagation_norm << ','
             << a.propagation_terms << ',' << a.input_terms << ',' << a.graph_terms << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
