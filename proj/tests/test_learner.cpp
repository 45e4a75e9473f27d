#include <doctest.h>

#include "graphlearn/evaluation.hpp"
#include "graphlearn/learner.hpp"
#include "graphlearn/synthetic.hpp"
#include "oracles.hpp"

using namespace graphlearn;

namespace {

struct SmallInstance {
  Matrix w;
  KernelSpec spec;
  SignalSet ys;
  Matrix x;
};

SmallInstance random_instance(Rng& rng, Eigen::Index n, int degree, Eigen::Index m) {
  Matrix w = oracle::random_weights(n, rng);
  Matrix coeffs(2, degree + 1);
  for (Eigen::Index i = 0; i < coeffs.size(); ++i) coeffs(i) = rng.normal();
  Matrix y(n, m);
  for (Eigen::Index i = 0; i < y.size(); ++i) y(i) = rng.normal();
  Matrix x = oracle::random_codes(2 * n, m, 2, rng);
  return {std::move(w), KernelSpec(std::move(coeffs)), SignalSet(std::move(y)), std::move(x)};
}

}  // namespace

TEST_CASE("objective trivial cases") {
  Rng rng(1);
  const SmallInstance s = random_instance(rng, 5, 3, 4);
  const Graph g = validate_graph(s.w);
  const SparseCodeMatrix zero(Matrix::Zero(10, 4), 1);
  CHECK(objective(g, s.spec, s.ys, zero, 0.0) ==
        doctest::Approx(s.ys.signals().squaredNorm()).epsilon(1e-14));

  const SparseCodeMatrix x(s.x, 2);
  const Matrix exact_y = build_dictionary(g, s.spec).atoms * s.x;
  CHECK(objective(g, s.spec, SignalSet(exact_y), x, 1.0) ==
        doctest::Approx(s.w.cwiseAbs().sum()).epsilon(1e-12));
}

TEST_CASE("objective matches a naive recomputation") {
  Rng rng(2);
  for (int t = 0; t < 5; ++t) {
    const SmallInstance s = random_instance(rng, 6, 4, 5);
    const double beta = 0.3;
    const double naive =
        oracle::fidelity_naive(s.w, s.spec.coeffs(), s.ys.signals(), s.x) +
        beta * s.w.cwiseAbs().sum();
    CHECK(std::abs(objective(validate_graph(s.w), s.spec, s.ys, SparseCodeMatrix(s.x, 2), beta) -
                   naive) < 1e-10 * std::max(1.0, naive));
  }
}

TEST_CASE("gradient vanishes when the objective is constant") {
  Rng rng(3);
  const Matrix w = oracle::random_weights(4, rng);
  const Matrix g = smooth_gradient(w, general_kernels(3), SignalSet(Matrix::Zero(4, 2)),
                                   Matrix::Zero(8, 2));
  CHECK(g.isZero(0.0));
}

TEST_CASE("gradient on the two-vertex graph with kernel L") {
  // L of a single edge does not depend on its weight, so both the closed
  // form and the finite difference are zero.
  Matrix w(2, 2);
  w << 0, 0.7, 0.7, 0;
  const KernelSpec spec(Matrix{{0.0, 1.0}});
  const SignalSet ys(Matrix{{1.0, -2.0}, {0.5, 3.0}});
  const Matrix x{{1.0, 0.0}, {0.0, 2.0}};
  const Matrix g = symmetrize_zero_diag(smooth_gradient(w, spec, ys, x));
  const Matrix fd = oracle::symmetric_fd_gradient(
      w, [&](const Matrix& v) { return fidelity(v, spec, ys, x); });
  CHECK(std::abs(g(0, 1)) <= 1e-8);
  CHECK(std::abs(fd(0, 1)) <= 1e-6);
}

TEST_CASE("symmetrized gradient matches finite differences") {
  Rng rng(4);
  const SmallInstance s = random_instance(rng, 8, 4, 5);
  const Matrix g = symmetrize_zero_diag(smooth_gradient(s.w, s.spec, s.ys, s.x));
  const Matrix fd = oracle::symmetric_fd_gradient(
      s.w, [&](const Matrix& v) { return fidelity(v, s.spec, s.ys, s.x); });
  CHECK(oracle::upper_relative_error(g, fd) <= 1e-4);
  // The finite differences use the independent naive fidelity as well.
  const Matrix fd_naive = oracle::symmetric_fd_gradient(s.w, [&](const Matrix& v) {
    return oracle::fidelity_naive(v, s.spec.coeffs(), s.ys.signals(), s.x);
  });
  CHECK(oracle::upper_relative_error(g, fd_naive) <= 1e-4);
}

TEST_CASE("gradient with a near-isolated vertex stays finite") {
  Rng rng(5);
  SmallInstance s = random_instance(rng, 6, 3, 4);
  s.w.row(2).setZero();
  s.w.col(2).setZero();
  const Matrix g = smooth_gradient(s.w, s.spec, s.ys, s.x);
  CHECK(g.allFinite());
}

TEST_CASE("symmetrize_zero_diag") {
  const Matrix out = symmetrize_zero_diag(Matrix{{1, 2}, {4, 5}});
  CHECK(out == Matrix{{0, 3}, {3, 0}});
  CHECK(symmetrize_zero_diag(out) == out);
  Rng rng(6);
  Matrix r(5, 5);
  for (Eigen::Index i = 0; i < r.size(); ++i) r(i) = rng.normal();
  const Matrix s = symmetrize_zero_diag(r);
  CHECK(s == s.transpose());
  CHECK(s.diagonal().isZero(0.0));
}

TEST_CASE("l1_subgradient") {
  CHECK(l1_subgradient(Matrix{{0, 1}, {1, 0}}, 0.1) == Matrix{{0, 0.1}, {0.1, 0}});
  CHECK(l1_subgradient(Matrix::Zero(3, 3), 0.5).isZero(0.0));
  CHECK(l1_subgradient(Matrix{{0, 1}, {1, 0}}, 0.0).isZero(0.0));
}

TEST_CASE("project_nonnegative") {
  const Matrix p = project_nonnegative(Matrix{{0.2, -0.5}, {0.3, 1.0}});
  CHECK(p == Matrix{{0.0, 0.0}, {0.3, 0.0}});
  const Matrix valid{{0, 0.4}, {0.4, 0}};
  CHECK(project_nonnegative(valid) == valid);
}

TEST_CASE("graph_update_step edge cases") {
  Rng rng(7);
  const SmallInstance s = random_instance(rng, 6, 3, 4);
  const Graph g = validate_graph(s.w);
  LearnConfig cfg;
  cfg.n_inner = 3;
  cfg.step_size = 0.0;
  CHECK(graph_update_step(g, s.spec, s.ys, SparseCodeMatrix(s.x, 2), cfg) == g);

  cfg.step_size = 0.5;
  cfg.beta_w = 0.0;
  const Graph empty = validate_graph(Matrix::Zero(6, 6));
  const SparseCodeMatrix zero(Matrix::Zero(12, 4), 1);
  CHECK(graph_update_step(empty, s.spec, SignalSet(Matrix::Zero(6, 4)), zero, cfg) == empty);
}

TEST_CASE("backtracking makes the inner loop monotone") {
  const Graph truth = gen_er({10, ErModel{0.4}, {}, 3});
  const KernelSpec spec = general_kernels(15);
  const PlantedInstance inst = gen_signals(truth, spec, 40, 3, 4);
  const Graph w0 = init_weights(10, 5);
  LearnConfig cfg;
  cfg.n_inner = 1;
  cfg.step_size = 50.0;  // far too large without backtracking
  cfg.backtracking = true;
  for (double beta : {0.0, 1e-3}) {
    cfg.beta_w = beta;
    double before = objective(w0, spec, inst.signals, inst.true_codes, beta);
    Graph w = w0;
    for (int step = 0; step < 10; ++step) {
      w = graph_update_step(w, spec, inst.signals, inst.true_codes, cfg);
      const double after = objective(w, spec, inst.signals, inst.true_codes, beta);
      CHECK(after <= before);
      before = after;
    }
  }
}

TEST_CASE("a huge fixed step is reported as divergence") {
  // L is scale invariant, so only the L1 term can blow up.
  const Graph truth = gen_er({10, ErModel{0.4}, {}, 3});
  const KernelSpec spec = general_kernels(15);
  const PlantedInstance inst = gen_signals(truth, spec, 40, 3, 4);
  LearnConfig cfg;
  cfg.step_size = 1e18;
  cfg.n_inner = 5;
  try {
    graph_update_step(init_weights(10, 5), spec, inst.signals, inst.true_codes, cfg);
    FAIL("expected divergence");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DivergenceDetected);
  }
}

TEST_CASE("init_weights") {
  CHECK(init_weights(7, 42) == init_weights(7, 42));
  CHECK_FALSE(init_weights(7, 42) == init_weights(7, 43));
  const Graph g = init_weights(100, 1);
  const Matrix& w = g.weights();
  CHECK(w.minCoeff() >= 0.0);
  CHECK(w.maxCoeff() < 1.0);
  CHECK(w.diagonal().isZero(0.0));
  const double mean = w.sum() / (100.0 * 99.0);
  CHECK(std::abs(mean - 0.5) <= 0.05);
  CHECK_THROWS_AS(init_weights(1, 0), Error);
}

TEST_CASE("threshold_weights") {
  const Matrix w{{0, .5, .2}, {.5, 0, .1}, {.2, .1, 0}};
  const Graph one = threshold_weights(w, ThresholdPolicy::edge_count(1));
  CHECK(one.edge_count() == 1);
  CHECK(one.weights()(0, 1) == 0.5);

  const Graph cut = threshold_weights(Matrix{{0, .5, 1e-5}, {.5, 0, 0}, {1e-5, 0, 0}},
                                      ThresholdPolicy::absolute(1e-4));
  CHECK(cut.weights()(0, 2) == 0.0);
  CHECK(cut.weights()(0, 1) == 0.5);

  const Graph sparse = validate_graph(Matrix{{0, 1, 0}, {1, 0, 2}, {0, 2, 0}});
  CHECK(threshold_weights(sparse.weights(), ThresholdPolicy::edge_count(sparse.edge_count())) ==
        sparse);
  CHECK(threshold_weights(w, ThresholdPolicy::edge_count(0)).edge_count() == 0);
  CHECK(threshold_weights(w, ThresholdPolicy::edge_count(10)).edge_count() == 3);

  // Exact ties at the cut are all kept.
  const Matrix tie{{0, .5, .5}, {.5, 0, .1}, {.5, .1, 0}};
  CHECK(threshold_weights(tie, ThresholdPolicy::edge_count(1)).edge_count() == 2);
}

TEST_CASE("threshold keeps exactly c edges when values are distinct") {
  Rng rng(8);
  for (int t = 0; t < 20; ++t) {
    const Matrix w = oracle::random_weights(12, rng, 0.7);
    const Graph g = validate_graph(w);
    const auto c = static_cast<Eigen::Index>(rng.below(static_cast<std::uint64_t>(g.edge_count() + 1)));
    CHECK(threshold_weights(w, ThresholdPolicy::edge_count(c)).edge_count() == c);
  }
}

TEST_CASE("learn_graph rejects an empty signal set") {
  try {
    learn_graph(SignalSet(Matrix::Zero(5, 0)), general_kernels(3), LearnConfig{});
    FAIL("expected EmptySignalSet");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EmptySignalSet);
  }
}

TEST_CASE("LearnConfig validation") {
  LearnConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.n_outer = 0;
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg = LearnConfig{};
  cfg.beta_w = -1.0;
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg = LearnConfig{};
  cfg.threshold = ThresholdPolicy::absolute(0.0);
  CHECK_THROWS_AS(cfg.validate(), Error);
}

TEST_CASE("learn_graph: valid iterates, determinism, decreasing fidelity") {
  const KernelSpec spec = general_kernels(15);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const Graph truth = gen_er(calibrate_density({12, ErModel{}, 36, seed}));
    const PlantedInstance inst = gen_signals(truth, spec, 60, 3, seed + 100);
    LearnConfig cfg;
    cfg.n_outer = 8;
    cfg.n_inner = 10;
    cfg.t0 = 3;
    cfg.seed = seed;
    cfg.threshold = ThresholdPolicy::edge_count(truth.edge_count());
    int observed = 0;
    const LearnResult r = learn_graph(inst.signals, spec, cfg,
                                      [&](int, int, const Graph&) { ++observed; });
    CHECK(observed == cfg.n_outer * cfg.n_inner);
    CHECK(r.objective_trace.size() == 8);
    for (double v : r.objective_trace) CHECK(std::isfinite(v));
    CHECK(r.fidelity_trace.back() < r.fidelity_trace.front());
    CHECK_NOTHROW(validate_graph(r.learned_graph.weights()));
    CHECK(r.learned_graph.edge_count() == truth.edge_count());

    if (seed <= 2) {
      const LearnResult again = learn_graph(inst.signals, spec, cfg);
      CHECK(again.raw_weights == r.raw_weights);
      CHECK(again.codes == r.codes);
      CHECK(again.objective_trace == r.objective_trace);
    }
  }
}

TEST_CASE("planted ER N=20 instance is recovered") {
  const KernelSpec spec = general_kernels(15);
  const Graph truth = gen_er(calibrate_density({20, ErModel{}, 60, 1}));
  const PlantedInstance inst = gen_signals(truth, spec, 200, 4, 1001);
  LearnConfig cfg;
  cfg.seed = 1;
  cfg.threshold = ThresholdPolicy::edge_count(truth.edge_count());
  const LearnResult r = learn_graph(inst.signals, spec, cfg);
  const EdgeMetrics m = edge_metrics(r.learned_graph, truth);
  CHECK(m.precision >= 0.95);
  CHECK(m.recall >= 0.95);
}
