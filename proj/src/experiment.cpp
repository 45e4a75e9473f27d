#include "graphlearn/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <tuple>

#include "graphlearn/io.hpp"

namespace graphlearn {

namespace {

double to_double(const std::string& s, const std::string& key) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw Error(ErrorCode::ParseError, key + ": bad number '" + s + "'");
  return v;
}

long long to_int(const std::string& s, const std::string& key) {
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw Error(ErrorCode::ParseError, key + ": bad integer '" + s + "'");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep))
    if (!item.empty()) out.push_back(item);
  return out;
}

bool to_bool(const std::string& s, const std::string& key) {
  if (s == "1" || s == "true" || s == "on" || s == "yes") return true;
  if (s == "0" || s == "false" || s == "off" || s == "no") return false;
  throw Error(ErrorCode::ParseError, key + ": bad boolean '" + s + "'");
}

}  // namespace

KernelSpec make_kernels(const std::string& kind, int degree,
                        const std::optional<std::filesystem::path>& kernels_file) {
  if (kind == "general") return general_kernels(degree);
  if (kind == "lowpass") return lowpass_kernels(degree);
  if (kind == "file") {
    if (!kernels_file)
      throw Error(ErrorCode::InvalidArgument,
                  "kernels 'file' requires a kernels file path");
    return KernelSpec(io::read_matrix(*kernels_file));
  }
  throw Error(ErrorCode::InvalidArgument,
              "unknown kernel family '" + kind + "' (general|lowpass|file)");
}

TrialSeeds trial_seeds(std::uint64_t base, int rep) {
  const auto r = base + static_cast<std::uint64_t>(rep);
  return {r, r + 1000, r};
}

TrialOutcome run_planted_trial(const PlantedTrial& trial,
                               const KernelSpec& spec) {
  SyntheticGraphConfig gcfg = trial.graph;
  if (gcfg.target_edges) gcfg = calibrate_density(gcfg);
  Graph truth = gen_graph(gcfg);
  const PlantedInstance inst =
      gen_signals(truth, spec, trial.m, trial.t0, trial.signal_seed);
  LearnConfig cfg = trial.learn;
  cfg.t0 = trial.t0;
  cfg.threshold = ThresholdPolicy::edge_count(truth.edge_count());
  LearnResult result = learn_graph(inst.signals, spec, cfg);
  const EdgeMetrics em = edge_metrics(result.learned_graph, truth);
  const CodeMetrics cm = code_metrics(result.codes, inst.true_codes);
  return TrialOutcome{std::move(truth), std::move(result), em, cm};
}

GridSpec parse_grid(const std::string& text, const LearnConfig& base) {
  if (text == "default") return GridSpec{{1e-4, 1e-3, 1e-2, 1e-1}, {0.03, 0.1, 0.3, 1.0}};
  GridSpec grid{{base.beta_w}, {base.step_size}};
  std::istringstream in(text);
  std::string part;
  while (in >> part) {
    const auto eq = part.find('=');
    if (eq == std::string::npos)
      throw Error(ErrorCode::ParseError, "grid axis '" + part + "' lacks '='");
    const std::string key = part.substr(0, eq);
    std::vector<double> values;
    for (const auto& v : split(part.substr(eq + 1), ','))
      values.push_back(to_double(v, key));
    if (values.empty())
      throw Error(ErrorCode::ParseError, "grid axis '" + key + "' is empty");
    if (key == "beta_w")
      grid.beta_w = std::move(values);
    else if (key == "step" || key == "step_size")
      grid.step = std::move(values);
    else
      throw Error(ErrorCode::ParseError, "unknown grid axis '" + key + "'");
  }
  return grid;
}

GridOutcome run_grid(const SignalSet& ys, const KernelSpec& spec,
                     const LearnConfig& base, const GridSpec& grid,
                     const std::optional<Graph>& truth) {
  std::vector<GridRun> runs;
  std::size_t selected = 0;
  std::optional<LearnResult> best;
  std::optional<Error> last_error;
  for (double beta : grid.beta_w) {
    for (double step : grid.step) {
      LearnConfig cfg = base;
      cfg.beta_w = beta;
      cfg.step_size = step;
      GridRun run{beta, step, {}, {}, {}};
      try {
        LearnResult r = learn_graph(ys, spec, cfg);
        run.final_objective = r.objective_trace.back();
        if (truth) run.edge_f = edge_metrics(r.learned_graph, *truth).f_measure;
        bool better = !best;
        if (best) {
          const GridRun& cur = runs[selected];
          better = truth ? *run.edge_f > *cur.edge_f
                         : *run.final_objective < *cur.final_objective;
        }
        if (better) {
          best = std::move(r);
          selected = runs.size();
        }
      } catch (const Error& e) {
        run.error = e.what();
        last_error = e;
      }
      runs.push_back(std::move(run));
    }
  }
  if (!best) throw *last_error;
  return GridOutcome{std::move(runs), selected, std::move(*best)};
}

std::string format_grid_report(const GridOutcome& outcome) {
  std::string s = "# beta_w step final_objective edge_f selected\n";
  for (std::size_t i = 0; i < outcome.runs.size(); ++i) {
    const GridRun& r = outcome.runs[i];
    s += io::format_double(r.beta_w) + " " + io::format_double(r.step) + " " +
         (r.final_objective ? io::format_double(*r.final_objective) : "nan") +
         " " + (r.edge_f ? io::format_double(*r.edge_f) : "na") + " " +
         (i == outcome.selected ? "1" : "0") + "\n";
  }
  return s;
}

void SweepManifest::validate() const {
  graph.validate();
  if (t0_grid.empty() || m_grid.empty())
    throw Error(ErrorCode::InvalidArgument, "sweep grids must be nonempty");
  for (int t : t0_grid)
    if (t < 1) throw Error(ErrorCode::InvalidArgument, "t0 values must be >= 1");
  for (auto m : m_grid)
    if (m < 1) throw Error(ErrorCode::InvalidArgument, "m values must be >= 1");
  if (replications < 1)
    throw Error(ErrorCode::InvalidArgument, "replications must be >= 1");
  if (degree < 1) throw Error(ErrorCode::InvalidArgument, "degree must be >= 1");
  learn.validate();
}

SweepManifest parse_manifest(const std::map<std::string, std::string>& kv) {
  SweepManifest mf;
  mf.graph.n = 50;
  std::string model = "er";
  ErModel er;
  RbfModel rbf;
  bool have_p = false, have_kappa = false, have_target = false;
  for (const auto& [key, value] : kv) {
    if (key == "n") mf.graph.n = to_int(value, key);
    else if (key == "model") model = value;
    else if (key == "p") { er.p = to_double(value, key); have_p = true; }
    else if (key == "sigma") rbf.sigma = to_double(value, key);
    else if (key == "kappa") { rbf.kappa = to_double(value, key); have_kappa = true; }
    else if (key == "target_edges") { mf.graph.target_edges = to_int(value, key); have_target = true; }
    else if (key == "kernels") mf.kernels = value;
    else if (key == "kernels_file") mf.kernels_file = value;
    else if (key == "degree") mf.degree = static_cast<int>(to_int(value, key));
    else if (key == "t0_grid") {
      mf.t0_grid.clear();
      for (const auto& v : split(value, ','))
        mf.t0_grid.push_back(static_cast<int>(to_int(v, key)));
    } else if (key == "m_grid") {
      mf.m_grid.clear();
      for (const auto& v : split(value, ',')) mf.m_grid.push_back(to_int(v, key));
    }
    else if (key == "replications") mf.replications = static_cast<int>(to_int(value, key));
    else if (key == "seed") mf.seed = static_cast<std::uint64_t>(to_int(value, key));
    else if (key == "beta_w") mf.learn.beta_w = to_double(value, key);
    else if (key == "step_size") mf.learn.step_size = to_double(value, key);
    else if (key == "n_outer") mf.learn.n_outer = static_cast<int>(to_int(value, key));
    else if (key == "n_inner") mf.learn.n_inner = static_cast<int>(to_int(value, key));
    else if (key == "backtracking") mf.learn.backtracking = to_bool(value, key);
    else throw Error(ErrorCode::ParseError, "unknown manifest key '" + key + "'");
  }
  if (model == "er")
    mf.graph.model = er;
  else if (model == "rbf")
    mf.graph.model = rbf;
  else
    throw Error(ErrorCode::ParseError, "model must be er or rbf");
  // Without an explicit density, aim for about 3N edges.
  const bool explicit_density = model == "er" ? have_p : have_kappa;
  if (!have_target && !explicit_density) mf.graph.target_edges = 3 * mf.graph.n;
  mf.validate();
  return mf;
}

std::vector<SweepRow> read_sweep_rows(const std::filesystem::path& path) {
  std::vector<SweepRow> rows;
  if (!std::filesystem::exists(path)) return rows;
  std::istringstream in(io::read_text(path));
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line.front() == '#') continue;
    std::istringstream ls(line);
    std::string rep, t0, m, ef, cf;
    if (!(ls >> rep >> t0 >> m >> ef >> cf))
      throw Error(ErrorCode::ParseError, path.string() + ": malformed row '" + line + "'");
    rows.push_back({static_cast<int>(to_int(rep, "replication")),
                    static_cast<int>(to_int(t0, "t0")), to_int(m, "m"),
                    to_double(ef, "edge_f"), to_double(cf, "code_f")});
  }
  return rows;
}

std::vector<SweepRow> run_sweep(const SweepManifest& manifest,
                                const std::filesystem::path& out) {
  manifest.validate();
  const KernelSpec spec =
      make_kernels(manifest.kernels, manifest.degree, manifest.kernels_file);

  std::set<std::tuple<int, int, Eigen::Index>> done;
  for (const auto& r : read_sweep_rows(out)) done.insert({r.replication, r.t0, r.m});
  if (!std::filesystem::exists(out))
    io::write_text_atomic(out, "# replication t0 m edge_f code_f\n");

  for (int rep = 0; rep < manifest.replications; ++rep) {
    const TrialSeeds seeds = trial_seeds(manifest.seed, rep);
    std::string block;
    for (int t0 : manifest.t0_grid) {
      for (Eigen::Index m : manifest.m_grid) {
        if (done.count({rep, t0, m})) continue;
        PlantedTrial trial;
        trial.graph = manifest.graph;
        trial.graph.seed = seeds.graph;
        trial.m = m;
        trial.t0 = t0;
        trial.signal_seed = seeds.signals;
        trial.learn = manifest.learn;
        trial.learn.seed = seeds.learner;
        const TrialOutcome o = run_planted_trial(trial, spec);
        block += std::to_string(rep) + " " + std::to_string(t0) + " " +
                 std::to_string(m) + " " + io::format_double(o.edges.f_measure) +
                 " " + io::format_double(o.codes.f_measure) + "\n";
      }
    }
    if (block.empty()) continue;
    std::ofstream app(out, std::ios::binary | std::ios::app);
    if (!app) throw Error(ErrorCode::IoError, "cannot append to " + out.string());
    app.write(block.data(), static_cast<std::streamsize>(block.size()));
    app.flush();
    if (!app) throw Error(ErrorCode::IoError, "append failed " + out.string());
  }
  return read_sweep_rows(out);
}

std::vector<SweepCell> summarize_sweep(const std::vector<SweepRow>& rows) {
  std::map<std::pair<int, Eigen::Index>, SweepCell> cells;
  for (const auto& r : rows) {
    auto& c = cells.try_emplace({r.t0, r.m}, SweepCell{r.t0, r.m, 0.0, 0.0, 0})
                  .first->second;
    c.mean_edge_f += r.edge_f;
    c.mean_code_f += r.code_f;
    ++c.count;
  }
  std::vector<SweepCell> out;
  for (auto& [key, c] : cells) {
    c.mean_edge_f /= c.count;
    c.mean_code_f /= c.count;
    out.push_back(c);
  }
  return out;
}

}  // namespace graphlearn
