#include "graphlearn/synthetic.hpp"

#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "graphlearn/dictionary.hpp"
#include "graphlearn/random.hpp"

namespace graphlearn {

namespace {

constexpr int kCalibrationTrials = 20;
constexpr double kCalibrationTolerance = 0.10;
constexpr int kMaxBisections = 100;

bool has_isolated_vertex(const Matrix& w) {
  return (w.rowwise().sum().array() <= 0.0).any();
}

Matrix random_points(Eigen::Index n, Rng& rng) {
  Matrix pts(n, 2);
  for (Eigen::Index i = 0; i < n; ++i) {
    pts(i, 0) = rng.uniform();
    pts(i, 1) = rng.uniform();
  }
  return pts;
}

}  // namespace

void SyntheticGraphConfig::validate() const {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "n must be >= 2");
  if (const auto* er = std::get_if<ErModel>(&model)) {
    if (!(er->p > 0.0 && er->p < 1.0))
      throw Error(ErrorCode::InvalidArgument, "ER p must be in (0, 1)");
  } else {
    const auto& rbf = std::get<RbfModel>(model);
    if (!(rbf.sigma > 0.0))
      throw Error(ErrorCode::InvalidArgument, "RBF sigma must be > 0");
    if (!(rbf.kappa > 0.0))
      throw Error(ErrorCode::InvalidArgument, "RBF kappa must be > 0");
  }
}

Graph gen_er(const SyntheticGraphConfig& cfg) {
  cfg.validate();
  const double p = std::get<ErModel>(cfg.model).p;
  Rng rng(cfg.seed);
  for (int attempt = 0; attempt < kMaxGenerationAttempts; ++attempt) {
    Matrix w = Matrix::Zero(cfg.n, cfg.n);
    for (Eigen::Index i = 0; i < cfg.n; ++i)
      for (Eigen::Index j = i + 1; j < cfg.n; ++j)
        if (rng.uniform() < p) w(i, j) = w(j, i) = 1.0;
    if (!has_isolated_vertex(w)) return graph_from_trusted(std::move(w));
  }
  throw Error(ErrorCode::GenerationFailed,
              "ER graph with n=" + std::to_string(cfg.n) +
                  " p=" + std::to_string(p) + " kept isolated vertices after " +
                  std::to_string(kMaxGenerationAttempts) + " attempts");
}

double rbf_weight(double dist, const RbfModel& model) {
  if (dist > model.kappa) return 0.0;
  return std::exp(-dist * dist / (2.0 * model.sigma * model.sigma));
}

Graph gen_rbf(const SyntheticGraphConfig& cfg) {
  cfg.validate();
  const auto& model = std::get<RbfModel>(cfg.model);
  Rng rng(cfg.seed);
  for (int attempt = 0; attempt < kMaxGenerationAttempts; ++attempt) {
    const Matrix pts = random_points(cfg.n, rng);
    Matrix w = Matrix::Zero(cfg.n, cfg.n);
    for (Eigen::Index i = 0; i < cfg.n; ++i)
      for (Eigen::Index j = i + 1; j < cfg.n; ++j)
        w(i, j) = w(j, i) = rbf_weight((pts.row(i) - pts.row(j)).norm(), model);
    if (!has_isolated_vertex(w)) return graph_from_trusted(std::move(w));
  }
  throw Error(ErrorCode::GenerationFailed,
              "RBF graph with n=" + std::to_string(cfg.n) +
                  " kappa=" + std::to_string(model.kappa) +
                  " kept isolated vertices after " +
                  std::to_string(kMaxGenerationAttempts) + " attempts");
}

Graph gen_graph(const SyntheticGraphConfig& cfg) {
  return std::holds_alternative<ErModel>(cfg.model) ? gen_er(cfg)
                                                    : gen_rbf(cfg);
}

SyntheticGraphConfig calibrate_density(SyntheticGraphConfig cfg) {
  if (!cfg.target_edges)
    throw Error(ErrorCode::InvalidArgument, "calibration needs target_edges");
  const double target = static_cast<double>(*cfg.target_edges);
  const double all_pairs = 0.5 * static_cast<double>(cfg.n) *
                           static_cast<double>(cfg.n - 1);
  if (!(target > 0.0) || target >= all_pairs)
    throw Error(ErrorCode::CalibrationFailed,
                "target edge count must be in (0, " +
                    std::to_string(static_cast<long long>(all_pairs)) + ")");

  if (std::holds_alternative<ErModel>(cfg.model)) {
    cfg.model = ErModel{target / all_pairs};
    cfg.validate();
    return cfg;
  }

  auto rbf = std::get<RbfModel>(cfg.model);
  // Mean edge count of the graphs gen_rbf produces for seeds seed..seed+19.
  // A draw that cannot avoid isolated vertices counts as too sparse.
  auto mean_edges = [&](double kappa) {
    SyntheticGraphConfig trial = cfg;
    trial.model = RbfModel{rbf.sigma, kappa};
    trial.target_edges.reset();
    double total = 0.0;
    for (int t = 0; t < kCalibrationTrials; ++t) {
      trial.seed = cfg.seed + static_cast<std::uint64_t>(t);
      try {
        total += static_cast<double>(gen_rbf(trial).edge_count());
      } catch (const Error& e) {
        if (e.code() != ErrorCode::GenerationFailed) throw;
      }
    }
    return total / kCalibrationTrials;
  };

  double lo = 0.0;
  double hi = std::sqrt(2.0);
  if (!(mean_edges(hi) >= target))
    throw Error(ErrorCode::CalibrationFailed, "upper bracket below target");
  for (int it = 0; it < kMaxBisections; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double e = mean_edges(mid);
    if (std::abs(e - target) <= kCalibrationTolerance * target) {
      rbf.kappa = mid;
      cfg.model = rbf;
      return cfg;
    }
    (e < target ? lo : hi) = mid;
  }
  throw Error(ErrorCode::CalibrationFailed,
              "kappa bisection did not reach target " +
                  std::to_string(*cfg.target_edges));
}

PlantedInstance gen_signals(const Graph& g, const KernelSpec& spec,
                            Eigen::Index m, int t0, std::uint64_t seed,
                            CoefficientMode mode) {
  const Eigen::Index n = g.size();
  const Eigen::Index n_atoms = n * spec.kernel_count();
  if (m < 1) throw Error(ErrorCode::InvalidArgument, "m must be >= 1");
  if (t0 < 1 || t0 > n_atoms)
    throw Error(ErrorCode::InvalidArgument,
                "t0 must be in [1, " + std::to_string(n_atoms) + "]");

  Rng rng(seed);
  Matrix codes = Matrix::Zero(n_atoms, m);
  std::vector<Eigen::Index> pool(static_cast<std::size_t>(n_atoms));
  for (Eigen::Index col = 0; col < m; ++col) {
    std::iota(pool.begin(), pool.end(), Eigen::Index{0});
    // Partial Fisher-Yates: the first t0 slots become a uniform t0-subset.
    for (int k = 0; k < t0; ++k) {
      const auto remaining = static_cast<std::uint64_t>(n_atoms - k);
      const auto pick = static_cast<std::size_t>(k) +
                        static_cast<std::size_t>(rng.below(remaining));
      std::swap(pool[static_cast<std::size_t>(k)], pool[pick]);
    }
    for (int k = 0; k < t0; ++k)
      codes(pool[static_cast<std::size_t>(k)], col) =
          mode == CoefficientMode::Unit ? 1.0 : rng.normal();
  }

  const Dictionary d = build_dictionary(g, spec);
  Matrix y = d.atoms * codes;
  return PlantedInstance{g, SignalSet(std::move(y)),
                         SparseCodeMatrix(std::move(codes), t0), spec};
}

}  // namespace graphlearn
