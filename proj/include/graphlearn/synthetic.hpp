#pragma once

#include <cstdint>
#include <optional>
#include <variant>

#include "graphlearn/codes.hpp"
#include "graphlearn/graph.hpp"
#include "graphlearn/kernels.hpp"
#include "graphlearn/sparse_coding.hpp"

namespace graphlearn {

struct ErModel {
  double p = 0.3;
};

/// Vertices uniform in the unit square; W_ij = exp(-d^2 / (2 sigma^2)) when
/// d <= kappa, else 0.
struct RbfModel {
  double sigma = 0.5;
  double kappa = 0.3;
};

struct SyntheticGraphConfig {
  Eigen::Index n = 20;
  std::variant<ErModel, RbfModel> model = ErModel{};
  std::optional<Eigen::Index> target_edges;
  std::uint64_t seed = 0;

  void validate() const;
};

inline constexpr int kMaxGenerationAttempts = 100;

/// Binary-weight Erdos-Renyi graph, redrawn (up to kMaxGenerationAttempts
/// times) until no vertex is isolated.
Graph gen_er(const SyntheticGraphConfig& cfg);

/// Thresholded Gaussian kernel graph, redrawn like gen_er.
Graph gen_rbf(const SyntheticGraphConfig& cfg);

/// Dispatches on cfg.model.
Graph gen_graph(const SyntheticGraphConfig& cfg);

/// Edge weight for two points at Euclidean distance `dist`.
double rbf_weight(double dist, const RbfModel& model);

/// Sets the model parameter so the expected edge count matches
/// cfg.target_edges. ER: p = 2 T / (N (N - 1)). RBF: bisection on kappa
/// until the mean edge count of the graphs generated for seeds
/// seed..seed+19 is within 10% of the target; throws CalibrationFailed
/// otherwise.
SyntheticGraphConfig calibrate_density(SyntheticGraphConfig cfg);

struct PlantedInstance {
  Graph graph;
  SignalSet signals;
  SparseCodeMatrix true_codes;
  KernelSpec spec;
};

enum class CoefficientMode {
  Normal,  // Normal(0, 1)
  Unit,    // every planted coefficient is 1
};

/// Each signal combines t0 distinct atoms chosen uniformly among the N*S
/// atoms of the unnormalized dictionary. Y = D X.
PlantedInstance gen_signals(const Graph& g, const KernelSpec& spec,
                            Eigen::Index m, int t0, std::uint64_t seed,
                            CoefficientMode mode = CoefficientMode::Normal);

}  // namespace graphlearn
