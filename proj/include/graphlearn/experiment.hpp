#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "graphlearn/evaluation.hpp"
#include "graphlearn/learner.hpp"
#include "graphlearn/synthetic.hpp"

namespace graphlearn {

/// "general", "lowpass", or "file" (coefficients read from kernels_file).
KernelSpec make_kernels(const std::string& kind, int degree,
                        const std::optional<std::filesystem::path>& kernels_file);

/// Seeds used for replication `rep` of an experiment seeded with `base`.
/// Signal draws depend only on (base, rep), so a larger M extends the same
/// signal sequence.
struct TrialSeeds {
  std::uint64_t graph;
  std::uint64_t signals;
  std::uint64_t learner;
};
TrialSeeds trial_seeds(std::uint64_t base, int rep);

struct PlantedTrial {
  SyntheticGraphConfig graph;  // target_edges triggers calibration
  Eigen::Index m = 200;
  int t0 = 4;
  std::uint64_t signal_seed = 0;
  LearnConfig learn;  // threshold is replaced by the true edge count
};

struct TrialOutcome {
  Graph truth;
  LearnResult result;
  EdgeMetrics edges;
  CodeMetrics codes;
};

TrialOutcome run_planted_trial(const PlantedTrial& trial, const KernelSpec& spec);

// ---- grid search -----------------------------------------------------------

struct GridSpec {
  std::vector<double> beta_w;
  std::vector<double> step;
};

/// Parses "beta_w=a,b,c step=x,y"; a missing axis keeps the base value.
/// "default" gives beta_w in {1e-4, 1e-3, 1e-2, 1e-1} x step in
/// {0.03, 0.1, 0.3, 1}.
GridSpec parse_grid(const std::string& text, const LearnConfig& base);

struct GridRun {
  double beta_w;
  double step;
  std::optional<double> final_objective;  // empty if the run failed
  std::optional<double> edge_f;
  std::string error;
};

struct GridOutcome {
  std::vector<GridRun> runs;
  std::size_t selected;
  LearnResult best;
};

/// Cross product of the grid. Selection: highest edge F-measure when `truth`
/// is given, else lowest final objective; ties keep the earlier run.
/// Throws the last run's error if every run failed.
GridOutcome run_grid(const SignalSet& ys, const KernelSpec& spec,
                     const LearnConfig& base, const GridSpec& grid,
                     const std::optional<Graph>& truth);

std::string format_grid_report(const GridOutcome& outcome);

// ---- sparsity / signal-count sweep -----------------------------------------

struct SweepManifest {
  SyntheticGraphConfig graph;
  std::string kernels = "general";
  std::optional<std::filesystem::path> kernels_file;
  int degree = 15;
  std::vector<int> t0_grid{2, 4, 8};
  std::vector<Eigen::Index> m_grid{50, 100, 200};
  int replications = 10;
  std::uint64_t seed = 1;
  LearnConfig learn;

  void validate() const;
};

/// Recognised keys: n, model, p, sigma, kappa, target_edges, kernels,
/// kernels_file, degree, t0_grid, m_grid, replications, seed, beta_w,
/// step_size, n_outer, n_inner, backtracking.
SweepManifest parse_manifest(const std::map<std::string, std::string>& kv);

struct SweepRow {
  int replication;
  int t0;
  Eigen::Index m;
  double edge_f;
  double code_f;
};

/// Runs every (replication, t0, m) cell not already present in `out`,
/// appending one block of rows per replication. Returns all rows in `out`
/// after the run, in file order.
std::vector<SweepRow> run_sweep(const SweepManifest& manifest,
                                const std::filesystem::path& out);

std::vector<SweepRow> read_sweep_rows(const std::filesystem::path& path);

struct SweepCell {
  int t0;
  Eigen::Index m;
  double mean_edge_f;
  double mean_code_f;
  int count;
};

/// Means per (t0, m), ordered by t0 then m.
std::vector<SweepCell> summarize_sweep(const std::vector<SweepRow>& rows);

}  // namespace graphlearn
