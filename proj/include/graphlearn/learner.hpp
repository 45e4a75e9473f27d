#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "graphlearn/codes.hpp"
#include "graphlearn/dictionary.hpp"
#include "graphlearn/graph.hpp"
#include "graphlearn/kernels.hpp"
#include "graphlearn/sparse_coding.hpp"

namespace graphlearn {

// Degrees are floored at this value before inversion on optimization
// iterates, so D^{-1/2} and D^{-1} stay finite.
inline constexpr double kDegreeFloor = 1e-8;
inline constexpr double kDivergenceLimit = 1e12;
inline constexpr int kMaxHalvings = 20;

struct ThresholdPolicy {
  enum class Mode { TargetEdgeCount, AbsoluteValue };
  Mode mode = Mode::AbsoluteValue;
  double arg = 1e-4;

  static ThresholdPolicy edge_count(Eigen::Index count) {
    return {Mode::TargetEdgeCount, static_cast<double>(count)};
  }
  static ThresholdPolicy absolute(double cut) {
    return {Mode::AbsoluteValue, cut};
  }
};

struct LearnConfig {
  double beta_w = 1e-3;
  double step_size = 0.3;
  int n_outer = 50;
  int n_inner = 20;
  int t0 = 4;
  std::uint64_t seed = 0;
  ThresholdPolicy threshold;
  // Halve the step (up to kMaxHalvings times) whenever it would increase
  // the objective; off reproduces plain fixed-step descent.
  bool backtracking = false;

  /// Throws InvalidArgument naming the first bad field.
  void validate() const;
};

struct LearnResult {
  Graph learned_graph;  // after thresholding
  Matrix raw_weights;   // before thresholding
  SparseCodeMatrix codes;
  std::vector<double> objective_trace;  // one entry per outer round
  std::vector<double> fidelity_trace;
};

/// ||Y - D X||_F^2 with D built unnormalized from `weights`.
double fidelity(const Matrix& weights, const KernelSpec& spec,
                const SignalSet& ys, const Matrix& codes);

/// fidelity + beta_w * sum_ij |W_ij| (both triangles).
double objective(const Graph& w, const KernelSpec& spec, const SignalSet& ys,
                 const SparseCodeMatrix& x, double beta_w);

/// Closed-form gradient of the fidelity term with respect to W, in the
/// A_{k,r} / B_k form:
///
///   G = sum_s sum_{k>=1} alpha_sk ( -2 sum_r A_{k,r}^T + 1 (B_k o I) )
///   A_{k,r} = D^{-1/2} L^{k-r-1} X_s E^T L^r D^{-1/2}
///   B_k     = sum_r D^{-1/2} W A_{k,r} D^{-1/2} + A_{k,r} W D^{-1}
///
/// with E = D X - Y. The raw matrix is not symmetric; only its symmetric
/// part symmetrize_zero_diag(G) is a gradient over the N(N-1)/2 free
/// weights.
Matrix smooth_gradient(const Matrix& weights, const KernelSpec& spec,
                       const SignalSet& ys, const Matrix& codes);

/// (G + G^T) / 2 with the diagonal zeroed.
Matrix symmetrize_zero_diag(const Matrix& g);

/// beta_w where W_ij > 0, else 0.
Matrix l1_subgradient(const Matrix& weights, double beta_w);

/// max(W, 0) entrywise, diagonal forced to 0.
Matrix project_nonnegative(Matrix candidate);

/// Runs cfg.n_inner projected subgradient steps on W with the codes fixed.
/// Throws DivergenceDetected when the objective exceeds kDivergenceLimit.
Graph graph_update_step(const Graph& w, const KernelSpec& spec,
                        const SignalSet& ys, const SparseCodeMatrix& x,
                        const LearnConfig& cfg);

/// Random symmetric W with Uniform[0,1) off-diagonal entries.
Graph init_weights(Eigen::Index n, std::uint64_t seed);

/// TargetEdgeCount(c): keep the upper-triangle entries whose value is at
/// least the c-th largest positive value (exact ties at the cut are all
/// kept), zero the rest. AbsoluteValue(t): zero entries below t.
Graph threshold_weights(const Matrix& raw, const ThresholdPolicy& policy);

/// Called with (outer round, inner step, iterate) after every inner step.
using IterateObserver =
    std::function<void(int outer, int inner, const Graph& iterate)>;

/// Alternates OMP sparse coding on the normalized dictionary with projected
/// gradient steps on W, then thresholds. Deterministic given cfg.seed.
LearnResult learn_graph(const SignalSet& ys, const KernelSpec& spec,
                        const LearnConfig& cfg,
                        const IterateObserver& observer = {});

}  // namespace graphlearn
