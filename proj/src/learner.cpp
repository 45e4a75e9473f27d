#include "graphlearn/learner.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "graphlearn/random.hpp"

namespace graphlearn {

namespace {

void check_dims(const Matrix& weights, const KernelSpec& spec,
                const SignalSet& ys, const Matrix& codes) {
  const Eigen::Index n = weights.rows();
  if (weights.cols() != n || ys.vertex_count() != n ||
      codes.rows() != n * spec.kernel_count() ||
      codes.cols() != ys.signal_count())
    throw Error(ErrorCode::DimensionMismatch,
                "W is " + std::to_string(weights.rows()) + "x" +
                    std::to_string(weights.cols()) + ", Y is " +
                    std::to_string(ys.vertex_count()) + "x" +
                    std::to_string(ys.signal_count()) + ", X is " +
                    std::to_string(codes.rows()) + "x" +
                    std::to_string(codes.cols()));
}

std::vector<Matrix> iterate_powers(const Matrix& weights, int degree) {
  return matrix_powers(normalized_laplacian_floored(weights, kDegreeFloor),
                       degree);
}

double objective_of(const Matrix& weights, const KernelSpec& spec,
                    const SignalSet& ys, const Matrix& codes, double beta_w) {
  return fidelity(weights, spec, ys, codes) +
         beta_w * weights.cwiseAbs().sum();
}

Graph update_with_observer(const Graph& g, const KernelSpec& spec,
                           const SignalSet& ys, const SparseCodeMatrix& x,
                           const LearnConfig& cfg, int outer,
                           const IterateObserver& observer) {
  const Matrix& codes = x.codes();
  Matrix w = g.weights();
  double current = objective_of(w, spec, ys, codes, cfg.beta_w);

  for (int step = 0; step < cfg.n_inner; ++step) {
    const Matrix grad =
        symmetrize_zero_diag(smooth_gradient(w, spec, ys, codes)) +
        l1_subgradient(w, cfg.beta_w);

    double eta = cfg.step_size;
    Matrix candidate = project_nonnegative(w - eta * grad);
    double value = objective_of(candidate, spec, ys, codes, cfg.beta_w);
    if (cfg.backtracking) {
      for (int h = 0; h < kMaxHalvings && !(value <= current); ++h) {
        eta *= 0.5;
        candidate = project_nonnegative(w - eta * grad);
        value = objective_of(candidate, spec, ys, codes, cfg.beta_w);
      }
      if (!(value <= current)) {
        candidate = w;
        value = current;
      }
    }
    if (!std::isfinite(value) || value > kDivergenceLimit)
      throw Error(ErrorCode::DivergenceDetected,
                  "objective " + std::to_string(value) + " at inner step " +
                      std::to_string(step) + " with step size " +
                      std::to_string(cfg.step_size));
    w = std::move(candidate);
    current = value;
    if (observer) observer(outer, step, validate_graph(w));
  }
  return graph_from_trusted(std::move(w));
}

}  // namespace

void LearnConfig::validate() const {
  auto fail = [](const std::string& what) {
    throw Error(ErrorCode::InvalidArgument, what);
  };
  if (!(beta_w >= 0.0) || !std::isfinite(beta_w)) fail("beta_w must be >= 0");
  if (!(step_size >= 0.0) || !std::isfinite(step_size))
    fail("step_size must be >= 0");
  if (n_outer < 1) fail("n_outer must be >= 1");
  if (n_inner < 1) fail("n_inner must be >= 1");
  if (t0 < 1) fail("t0 must be >= 1");
  if (threshold.mode == ThresholdPolicy::Mode::TargetEdgeCount &&
      !(threshold.arg >= 0.0))
    fail("threshold edge count must be >= 0");
  if (threshold.mode == ThresholdPolicy::Mode::AbsoluteValue &&
      !(threshold.arg > 0.0))
    fail("threshold cut must be > 0");
}

double fidelity(const Matrix& weights, const KernelSpec& spec,
                const SignalSet& ys, const Matrix& codes) {
  check_dims(weights, spec, ys, codes);
  const Dictionary d =
      build_dictionary(iterate_powers(weights, spec.degree()), spec);
  return (ys.signals() - d.atoms * codes).squaredNorm();
}

double objective(const Graph& w, const KernelSpec& spec, const SignalSet& ys,
                 const SparseCodeMatrix& x, double beta_w) {
  return objective_of(w.weights(), spec, ys, x.codes(), beta_w);
}

Matrix smooth_gradient(const Matrix& weights, const KernelSpec& spec,
                       const SignalSet& ys, const Matrix& codes) {
  check_dims(weights, spec, ys, codes);
  const Eigen::Index n = weights.rows();
  const int degree = spec.degree();
  const int s_count = spec.kernel_count();
  const Matrix& alpha = spec.coeffs();

  const std::vector<Matrix> powers = iterate_powers(weights, degree);
  const Dictionary d = build_dictionary(powers, spec);
  const Matrix residual_t = (d.atoms * codes - ys.signals()).transpose();

  std::vector<Matrix> q(static_cast<std::size_t>(s_count));
  for (int s = 0; s < s_count; ++s)
    q[static_cast<std::size_t>(s)] = codes.middleRows(s * n, n) * residual_t;

  // sum_s sum_k alpha_sk sum_{r<k} L^{k-1-r} Q_s L^r, regrouped by r so each
  // L^r is applied once: sum_r [ sum_s (sum_a alpha_{s,a+r+1} L^a) Q_s ] L^r.
  Matrix c = Matrix::Zero(n, n);
  Matrix left(n, n);
  Matrix poly(n, n);
  for (int r = 0; r < degree; ++r) {
    left.setZero();
    for (int s = 0; s < s_count; ++s) {
      poly.setZero();
      for (int a = 0; a + r + 1 <= degree; ++a) {
        const double coef = alpha(s, a + r + 1);
        if (coef != 0.0) poly += coef * powers[static_cast<std::size_t>(a)];
      }
      left.noalias() += poly * q[static_cast<std::size_t>(s)];
    }
    c.noalias() += left * powers[static_cast<std::size_t>(r)];
  }

  const Vector deg = weights.rowwise().sum().cwiseMax(kDegreeFloor);
  const Vector inv_sqrt = deg.cwiseSqrt().cwiseInverse();
  const Vector inv = deg.cwiseInverse();

  // A and B summed over (s, k, r) with their alpha weights.
  const Matrix a_sum = inv_sqrt.asDiagonal() * c * inv_sqrt.asDiagonal();
  const Matrix wa = weights * a_sum;
  const Matrix aw = a_sum * weights;
  Vector b_diag(n);
  for (Eigen::Index i = 0; i < n; ++i)
    b_diag(i) = inv(i) * wa(i, i) + aw(i, i) * inv(i);

  Matrix g = -2.0 * a_sum.transpose();
  g.rowwise() += b_diag.transpose();
  return g;
}

Matrix symmetrize_zero_diag(const Matrix& g) {
  Matrix out = 0.5 * (g + g.transpose());
  out.diagonal().setZero();
  return out;
}

Matrix l1_subgradient(const Matrix& weights, double beta_w) {
  Matrix out = (weights.array() > 0.0).cast<double>().matrix() * beta_w;
  out.diagonal().setZero();
  return out;
}

Matrix project_nonnegative(Matrix candidate) {
  candidate = candidate.cwiseMax(0.0);
  candidate.diagonal().setZero();
  return candidate;
}

Graph graph_update_step(const Graph& w, const KernelSpec& spec,
                        const SignalSet& ys, const SparseCodeMatrix& x,
                        const LearnConfig& cfg) {
  return update_with_observer(w, spec, ys, x, cfg, 0, {});
}

Graph init_weights(Eigen::Index n, std::uint64_t seed) {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "n must be >= 2");
  Rng rng(seed);
  Matrix w = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) w(i, j) = w(j, i) = rng.uniform();
  return graph_from_trusted(std::move(w));
}

Graph threshold_weights(const Matrix& raw, const ThresholdPolicy& policy) {
  const Eigen::Index n = raw.rows();
  if (raw.cols() != n)
    throw Error(ErrorCode::DimensionMismatch, "weight matrix must be square");

  double cut = 0.0;
  if (policy.mode == ThresholdPolicy::Mode::AbsoluteValue) {
    cut = policy.arg;
  } else {
    std::vector<double> values;
    for (Eigen::Index j = 1; j < n; ++j)
      for (Eigen::Index i = 0; i < j; ++i)
        if (raw(i, j) > 0.0) values.push_back(raw(i, j));
    const auto count = static_cast<std::size_t>(std::max(0.0, policy.arg));
    if (count == 0) {
      cut = INFINITY;
    } else if (count < values.size()) {
      std::nth_element(values.begin(), values.begin() + (count - 1),
                       values.end(), std::greater<>());
      cut = values[count - 1];
    }
  }

  Matrix out = Matrix::Zero(n, n);
  for (Eigen::Index j = 1; j < n; ++j)
    for (Eigen::Index i = 0; i < j; ++i)
      if (raw(i, j) > 0.0 && raw(i, j) >= cut) out(i, j) = out(j, i) = raw(i, j);
  return graph_from_trusted(std::move(out));
}

LearnResult learn_graph(const SignalSet& ys, const KernelSpec& spec,
                        const LearnConfig& cfg,
                        const IterateObserver& observer) {
  cfg.validate();
  if (ys.signal_count() == 0)
    throw Error(ErrorCode::EmptySignalSet, "no training signals");
  const Eigen::Index n = ys.vertex_count();

  Graph w = init_weights(n, cfg.seed);
  std::vector<double> objective_trace;
  std::vector<double> fidelity_trace;
  Matrix codes;

  for (int outer = 0; outer < cfg.n_outer; ++outer) {
    try {
      const Dictionary normalized = normalize_atoms(
          build_dictionary(iterate_powers(w.weights(), spec.degree()), spec));
      const SparseCodeMatrix x = renormalize_codes(
          omp_encode_all(normalized, ys, cfg.t0), *normalized.atom_norms);
      w = update_with_observer(w, spec, ys, x, cfg, outer, observer);
      const double fid = fidelity(w.weights(), spec, ys, x.codes());
      fidelity_trace.push_back(fid);
      objective_trace.push_back(fid + cfg.beta_w * w.weights().sum());
      codes = x.codes();
    } catch (const Error& e) {
      throw Error(e.code(),
                  "outer iteration " + std::to_string(outer) + ": " + e.what());
    }
  }

  Matrix raw = w.weights();
  Graph learned = threshold_weights(raw, cfg.threshold);
  return LearnResult{std::move(learned), std::move(raw),
                     SparseCodeMatrix(std::move(codes), cfg.t0),
                     std::move(objective_trace), std::move(fidelity_trace)};
}

}  // namespace graphlearn
