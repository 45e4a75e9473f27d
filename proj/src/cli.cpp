#include "graphlearn/cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "graphlearn/experiment.hpp"
#include "graphlearn/io.hpp"

namespace graphlearn {

namespace {

using std::filesystem::path;

struct KernelFlags {
  std::string kind = "general";
  std::string file;
  int degree = 15;

  void add(CLI::App* app) {
    app->add_option("--kernels", kind, "Kernel family: general|lowpass|file")
        ->check(CLI::IsMember({"general", "lowpass", "file"}));
    app->add_option("--kernels-file", file,
                    "Coefficient file, one kernel per row (with --kernels file)");
    app->add_option("--degree", degree, "Polynomial degree K")
        ->check(CLI::PositiveNumber);
  }

  KernelSpec make() const {
    std::optional<path> f;
    if (!file.empty()) f = file;
    // Supplying a file implies the file family.
    return make_kernels(file.empty() ? kind : "file", degree, f);
  }
};

std::string provenance(const std::string& what) { return "graphlearn " + what; }

// ---- gen-graph -------------------------------------------------------------

struct GenGraphArgs {
  std::string model = "er";
  long long n = 0;
  double p = 0.0;
  double sigma = 0.5;
  double kappa = 0.0;
  long long target_edges = 0;
  std::uint64_t seed = 0;
  std::string out;
  CLI::Option* p_opt = nullptr;
  CLI::Option* kappa_opt = nullptr;
  CLI::Option* target_opt = nullptr;
};

void cmd_gen_graph(const GenGraphArgs& a, std::ostream& out) {
  SyntheticGraphConfig cfg;
  cfg.n = a.n;
  cfg.seed = a.seed;
  if (a.model == "er") {
    if (!a.p_opt->count() && !a.target_opt->count())
      throw CLI::ValidationError("--model er needs --p or --target-edges");
    cfg.model = ErModel{a.p_opt->count() ? a.p : 0.5};
  } else {
    if (!a.kappa_opt->count() && !a.target_opt->count())
      throw CLI::ValidationError("--model rbf needs --kappa or --target-edges");
    cfg.model = RbfModel{a.sigma, a.kappa_opt->count() ? a.kappa : 0.5};
  }
  if (a.target_opt->count()) {
    cfg.target_edges = a.target_edges;
    cfg = calibrate_density(cfg);
  }
  const Graph g = gen_graph(cfg);

  std::ostringstream desc;
  desc << "model=" << a.model << " n=" << cfg.n << " seed=" << cfg.seed;
  if (const auto* er = std::get_if<ErModel>(&cfg.model))
    desc << " p=" << io::format_double(er->p);
  else {
    const auto& rbf = std::get<RbfModel>(cfg.model);
    desc << " sigma=" << io::format_double(rbf.sigma)
         << " kappa=" << io::format_double(rbf.kappa);
  }
  if (cfg.target_edges) desc << " target_edges=" << *cfg.target_edges;
  io::write_matrix(a.out, g.weights(),
                   {provenance("gen-graph"), desc.str(),
                    "edges=" + std::to_string(g.edge_count())});
  out << "wrote " << a.out << " (" << g.size() << " vertices, "
      << g.edge_count() << " edges)\n";
}

// ---- gen-signals -----------------------------------------------------------

struct GenSignalsArgs {
  std::string graph;
  KernelFlags kernels;
  long long m = 200;
  int t0 = 4;
  std::uint64_t seed = 0;
  std::string out_signals;
  std::string out_codes;
};

void cmd_gen_signals(const GenSignalsArgs& a, std::ostream& out) {
  const Graph g = validate_graph(io::read_matrix(a.graph));
  const KernelSpec spec = a.kernels.make();
  const PlantedInstance inst = gen_signals(g, spec, a.m, a.t0, a.seed);
  const std::string desc = "graph=" + a.graph + " kernels=" +
                           (a.kernels.file.empty() ? a.kernels.kind
                                                   : a.kernels.file) +
                           " degree=" + std::to_string(spec.degree()) +
                           " m=" + std::to_string(a.m) +
                           " t0=" + std::to_string(a.t0) +
                           " seed=" + std::to_string(a.seed);
  io::write_matrix(a.out_signals, inst.signals.signals(),
                   {provenance("gen-signals"), desc});
  if (!a.out_codes.empty())
    io::write_codes(a.out_codes, inst.true_codes,
                    {provenance("gen-signals"), desc});
  out << "wrote " << a.out_signals << " (" << inst.signals.vertex_count()
      << " x " << inst.signals.signal_count() << ")\n";
}

// ---- learn -----------------------------------------------------------------

struct LearnArgs {
  std::string signals;
  KernelFlags kernels;
  std::string config;
  double beta_w = 0.0;
  double step = 0.0;
  int outer = 0;
  int inner = 0;
  int t0 = 0;
  std::uint64_t seed = 0;
  bool backtracking = false;
  std::string threshold_mode;
  double threshold_arg = 0.0;
  std::string grid;
  std::string truth;
  std::string grid_report;
  std::string out_graph;
  std::string out_raw;
  std::string out_codes;
  std::string out_trace;
  std::map<std::string, CLI::Option*> opts;

  bool given(const std::string& name) const { return opts.at(name)->count() > 0; }
};

LearnConfig learn_config_from(const LearnArgs& a, const std::optional<Graph>& truth) {
  LearnConfig cfg;
  std::string mode;
  std::optional<double> arg;
  if (!a.config.empty()) {
    for (const auto& [key, value] : io::read_key_values(a.config)) {
      auto num = [&] {
        return std::stod(value);
      };
      try {
        if (key == "beta_w") cfg.beta_w = num();
        else if (key == "step_size") cfg.step_size = num();
        else if (key == "n_outer") cfg.n_outer = std::stoi(value);
        else if (key == "n_inner") cfg.n_inner = std::stoi(value);
        else if (key == "t0") cfg.t0 = std::stoi(value);
        else if (key == "seed") cfg.seed = std::stoull(value);
        else if (key == "backtracking") cfg.backtracking = value == "1" || value == "true" || value == "on";
        else if (key == "threshold_mode") mode = value;
        else if (key == "threshold_arg") arg = num();
        else throw Error(ErrorCode::ParseError, a.config + ": unknown key '" + key + "'");
      } catch (const std::logic_error&) {
        throw Error(ErrorCode::ParseError, a.config + ": bad value for '" + key + "'");
      }
    }
  }
  if (a.given("--beta-w")) cfg.beta_w = a.beta_w;
  if (a.given("--step")) cfg.step_size = a.step;
  if (a.given("--outer")) cfg.n_outer = a.outer;
  if (a.given("--inner")) cfg.n_inner = a.inner;
  if (a.given("--t0")) cfg.t0 = a.t0;
  if (a.given("--seed")) cfg.seed = a.seed;
  if (a.given("--backtracking")) cfg.backtracking = a.backtracking;
  if (a.given("--threshold-mode")) mode = a.threshold_mode;
  if (a.given("--threshold-arg")) arg = a.threshold_arg;

  if (mode.empty()) mode = truth ? "count" : "value";
  if (mode == "count") {
    if (!arg && !truth)
      throw Error(ErrorCode::InvalidArgument,
                  "threshold mode count needs --threshold-arg or --truth");
    cfg.threshold = ThresholdPolicy::edge_count(
        arg ? static_cast<Eigen::Index>(*arg) : truth->edge_count());
  } else if (mode == "value") {
    cfg.threshold = ThresholdPolicy::absolute(arg.value_or(1e-4));
  } else {
    throw Error(ErrorCode::InvalidArgument,
                "threshold mode must be count or value, got '" + mode + "'");
  }
  cfg.validate();
  return cfg;
}

void cmd_learn(const LearnArgs& a, std::ostream& out) {
  const SignalSet ys(io::read_matrix(a.signals));
  const KernelSpec spec = a.kernels.make();
  std::optional<Graph> truth;
  if (!a.truth.empty()) truth = validate_graph(io::read_matrix(a.truth));
  const LearnConfig cfg = learn_config_from(a, truth);

  LearnResult result = [&] {
    if (a.grid.empty()) return learn_graph(ys, spec, cfg);
    GridOutcome grid = run_grid(ys, spec, cfg, parse_grid(a.grid, cfg), truth);
    const std::string report = format_grid_report(grid);
    if (!a.grid_report.empty()) io::write_text_atomic(a.grid_report, report);
    out << report;
    return std::move(grid.best);
  }();

  const std::string desc =
      "signals=" + a.signals + " seed=" + std::to_string(cfg.seed) +
      " t0=" + std::to_string(cfg.t0) + " outer=" + std::to_string(cfg.n_outer) +
      " inner=" + std::to_string(cfg.n_inner);
  io::write_matrix(a.out_graph, result.learned_graph.weights(),
                   {provenance("learn"), desc});
  if (!a.out_raw.empty())
    io::write_matrix(a.out_raw, result.raw_weights, {provenance("learn"), desc});
  if (!a.out_codes.empty())
    io::write_codes(a.out_codes, result.codes, {provenance("learn"), desc});
  if (!a.out_trace.empty()) io::write_trace(a.out_trace, result.objective_trace);
  out << "learned " << result.learned_graph.edge_count() << " edges, final objective "
      << io::format_double(result.objective_trace.back()) << "\n";
}

// ---- evaluate --------------------------------------------------------------

struct EvaluateArgs {
  std::vector<std::string> learned;
  std::vector<std::string> truth;
  std::vector<std::string> learned_codes;
  std::vector<std::string> true_codes;
  std::string out;
};

void cmd_evaluate(const EvaluateArgs& a, std::ostream& out) {
  if (a.learned.size() != a.truth.size())
    throw CLI::ValidationError("--learned and --truth must be given the same number of times");
  if (a.learned_codes.size() != a.true_codes.size())
    throw CLI::ValidationError("--learned-codes and --true-codes must be paired");
  const bool with_codes = !a.learned_codes.empty();
  if (with_codes && a.learned_codes.size() != a.learned.size())
    throw CLI::ValidationError("give one code pair per graph pair");

  std::vector<EdgeMetrics> edges;
  std::vector<CodeMetrics> codes;
  for (std::size_t i = 0; i < a.learned.size(); ++i) {
    edges.push_back(edge_metrics(validate_graph(io::read_matrix(a.learned[i])),
                                 validate_graph(io::read_matrix(a.truth[i]))));
    if (with_codes)
      codes.push_back(code_metrics(io::read_codes(a.learned_codes[i]),
                                   io::read_codes(a.true_codes[i])));
  }

  std::string rows = "instance_id,metric,value\n";
  auto row = [&](const std::string& id, const std::string& metric, double v) {
    rows += id + "," + metric + "," + io::format_double(v) + "\n";
  };
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const std::string id = std::to_string(i);
    row(id, "edge_precision", edges[i].precision);
    row(id, "edge_recall", edges[i].recall);
    row(id, "edge_f", edges[i].f_measure);
    if (with_codes) {
      row(id, "code_precision", codes[i].precision);
      row(id, "code_recall", codes[i].recall);
      row(id, "code_f", codes[i].f_measure);
    }
  }

  const MetricSummary es = aggregate(edges);
  std::ostringstream table;
  table << std::fixed << std::setprecision(4);
  table << std::left << std::setw(22) << "metric" << std::right << std::setw(10)
        << "mean" << std::setw(10) << "std" << "\n";
  auto line = [&](const std::string& name, double mean, double sd) {
    table << std::left << std::setw(22) << name << std::right << std::setw(10)
          << mean << std::setw(10) << sd << "\n";
    row("mean", name, mean);
    row("std", name, sd);
  };
  line("edge_precision", es.mean_precision, es.std_precision);
  line("edge_recall", es.mean_recall, es.std_recall);
  line("edge_f", es.mean_f, es.std_f);
  if (with_codes) {
    const MetricSummary cs = aggregate(codes);
    line("code_precision", cs.mean_precision, cs.std_precision);
    line("code_recall", cs.mean_recall, cs.std_recall);
    line("code_f", cs.mean_f, cs.std_f);
  }
  out << "instances: " << edges.size() << "\n" << table.str();
  if (!a.out.empty()) io::write_text_atomic(a.out, rows);
}

// ---- sweep -----------------------------------------------------------------

struct SweepArgs {
  std::string manifest;
  std::string out;
};

void cmd_sweep(const SweepArgs& a, std::ostream& out) {
  const SweepManifest mf = parse_manifest(io::read_key_values(a.manifest));
  const auto rows = run_sweep(mf, a.out);
  out << "t0 m mean_edge_f mean_code_f replications\n";
  for (const auto& c : summarize_sweep(rows))
    out << c.t0 << " " << c.m << " " << io::format_double(c.mean_edge_f) << " "
        << io::format_double(c.mean_code_f) << " " << c.count << "\n";
}

// ---- kernel-dump -----------------------------------------------------------

struct KernelDumpArgs {
  KernelFlags kernels;
  int samples = 101;
  std::string out;
  std::string graph;
  std::string atoms_out;
};

void cmd_kernel_dump(const KernelDumpArgs& a, std::ostream& out) {
  const KernelSpec spec = a.kernels.make();
  std::string text = "# " + provenance("kernel-dump") + "\n";
  for (int s = 0; s < spec.kernel_count(); ++s) {
    const Vector c = spec.row(s);
    text += "# kernel " + std::to_string(s + 1) + "\n";
    for (int i = 0; i < a.samples; ++i) {
      const double lambda =
          a.samples == 1 ? 0.0 : 2.0 * static_cast<double>(i) / (a.samples - 1);
      text += io::format_double(lambda) + " " +
              io::format_double(eval_kernel(c, lambda)) + "\n";
    }
  }
  if (a.out.empty())
    out << text;
  else
    io::write_text_atomic(a.out, text);

  if (!a.atoms_out.empty()) {
    if (a.graph.empty())
      throw CLI::ValidationError("--atoms-out requires --graph");
    const Dictionary d =
        build_dictionary(validate_graph(io::read_matrix(a.graph)), spec);
    io::write_matrix(a.atoms_out, d.atoms,
                     {provenance("kernel-dump"),
                      "atoms of graph " + a.graph + "; column s*N+v is kernel s at vertex v"});
  }
}

std::string one_line(std::string s) {
  for (char& c : s)
    if (c == '\n' || c == '\r') c = ' ';
  while (!s.empty() && s.back() == ' ') s.pop_back();
  return s;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Learn graph topologies from signals that are sparse in a "
               "polynomial graph dictionary"};
  app.require_subcommand(1);

  GenGraphArgs gg;
  auto* gen_graph_cmd = app.add_subcommand("gen-graph", "Generate a random ground-truth graph");
  gen_graph_cmd->add_option("--model", gg.model, "er|rbf")
      ->check(CLI::IsMember({"er", "rbf"}));
  gen_graph_cmd->add_option("--n", gg.n, "Vertex count")->required()->check(CLI::Range(2LL, 100000LL));
  gg.p_opt = gen_graph_cmd->add_option("--p", gg.p, "ER edge probability");
  gen_graph_cmd->add_option("--sigma", gg.sigma, "RBF kernel width");
  gg.kappa_opt = gen_graph_cmd->add_option("--kappa", gg.kappa, "RBF distance threshold");
  gg.target_opt = gen_graph_cmd->add_option("--target-edges", gg.target_edges,
                                            "Calibrate density to about this many edges");
  gen_graph_cmd->add_option("--seed", gg.seed, "RNG seed");
  gen_graph_cmd->add_option("--out", gg.out, "Output graph file")->required();

  GenSignalsArgs gs;
  auto* gen_signals_cmd = app.add_subcommand("gen-signals", "Generate planted training signals");
  gen_signals_cmd->add_option("--graph", gs.graph, "Graph file")->required();
  gs.kernels.add(gen_signals_cmd);
  gen_signals_cmd->add_option("--m", gs.m, "Number of signals")->check(CLI::PositiveNumber);
  gen_signals_cmd->add_option("--t0", gs.t0, "Atoms per signal")->check(CLI::PositiveNumber);
  gen_signals_cmd->add_option("--seed", gs.seed, "RNG seed");
  gen_signals_cmd->add_option("--out-signals", gs.out_signals, "Signals file")->required();
  gen_signals_cmd->add_option("--out-codes", gs.out_codes, "True codes triplet file");

  LearnArgs la;
  auto* learn_cmd = app.add_subcommand("learn", "Learn a graph from signals");
  learn_cmd->add_option("--signals", la.signals, "Signals file (N x M)")->required();
  la.kernels.add(learn_cmd);
  learn_cmd->add_option("--config", la.config, "key = value file with learner settings");
  la.opts["--beta-w"] = learn_cmd->add_option("--beta-w", la.beta_w, "L1 weight");
  la.opts["--step"] = learn_cmd->add_option("--step", la.step, "Gradient step size");
  la.opts["--outer"] = learn_cmd->add_option("--outer", la.outer, "Alternation rounds");
  la.opts["--inner"] = learn_cmd->add_option("--inner", la.inner, "Gradient steps per round");
  la.opts["--t0"] = learn_cmd->add_option("--t0", la.t0, "Sparsity budget");
  la.opts["--seed"] = learn_cmd->add_option("--seed", la.seed, "Initialization seed");
  la.opts["--backtracking"] = learn_cmd->add_flag("--backtracking", la.backtracking,
                                                  "Halve steps that increase the objective");
  la.opts["--threshold-mode"] = learn_cmd->add_option("--threshold-mode", la.threshold_mode, "count|value");
  la.opts["--threshold-arg"] = learn_cmd->add_option("--threshold-arg", la.threshold_arg,
                                                     "Edge count or absolute cut");
  learn_cmd->add_option("--grid", la.grid, "Grid search: \"default\" or e.g. \"beta_w=1e-3,1e-2 step=0.1,0.3\"");
  learn_cmd->add_option("--truth", la.truth, "Ground-truth graph (grid selection, count threshold)");
  learn_cmd->add_option("--grid-report", la.grid_report, "Write the grid selection report here");
  learn_cmd->add_option("--out-graph", la.out_graph, "Thresholded graph")->required();
  learn_cmd->add_option("--out-raw", la.out_raw, "Weights before thresholding");
  learn_cmd->add_option("--out-codes", la.out_codes, "Learned codes triplet file");
  learn_cmd->add_option("--out-trace", la.out_trace, "Objective trace");

  EvaluateArgs ea;
  auto* evaluate_cmd = app.add_subcommand("evaluate", "Score learned graphs and codes");
  evaluate_cmd->add_option("--learned", ea.learned, "Learned graph file(s)")->required();
  evaluate_cmd->add_option("--truth", ea.truth, "Ground-truth graph file(s)")->required();
  evaluate_cmd->add_option("--learned-codes", ea.learned_codes, "Learned code file(s)");
  evaluate_cmd->add_option("--true-codes", ea.true_codes, "True code file(s)");
  evaluate_cmd->add_option("--out", ea.out, "Delimited metric rows");

  SweepArgs sa;
  auto* sweep_cmd = app.add_subcommand("sweep", "Sparsity / signal-count sweep");
  sweep_cmd->add_option("--manifest", sa.manifest, "Manifest (key = value)")->required();
  sweep_cmd->add_option("--out", sa.out, "Result rows (resumed if present)")->required();

  KernelDumpArgs ka;
  auto* dump_cmd = app.add_subcommand("kernel-dump", "Sample kernels on [0, 2]");
  ka.kernels.add(dump_cmd);
  dump_cmd->add_option("--samples", ka.samples, "Grid points")->check(CLI::PositiveNumber);
  dump_cmd->add_option("--out", ka.out, "Output file (stdout if omitted)");
  dump_cmd->add_option("--graph", ka.graph, "Graph for --atoms-out");
  dump_cmd->add_option("--atoms-out", ka.atoms_out, "Write the dictionary atom matrix");

  try {
    app.parse(argc, argv);
    if (*gen_graph_cmd) cmd_gen_graph(gg, out);
    else if (*gen_signals_cmd) cmd_gen_signals(gs, out);
    else if (*learn_cmd) cmd_learn(la, out);
    else if (*evaluate_cmd) cmd_evaluate(ea, out);
    else if (*sweep_cmd) cmd_sweep(sa, out);
    else if (*dump_cmd) cmd_kernel_dump(ka, out);
    return 0;
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: Usage: " << one_line(e.what()) << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << one_line(e.what()) << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << one_line(e.what()) << "\n";
    return 1;
  }
}

}  // namespace graphlearn
