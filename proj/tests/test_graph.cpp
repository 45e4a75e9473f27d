#include <doctest.h>

#include "graphlearn/graph.hpp"
#include "oracles.hpp"

using namespace graphlearn;

namespace {
Matrix mat(std::initializer_list<std::initializer_list<double>> rows) {
  Matrix m(static_cast<Eigen::Index>(rows.size()),
           static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index i = 0;
  for (const auto& r : rows) {
    Eigen::Index j = 0;
    for (double v : r) m(i, j++) = v;
    ++i;
  }
  return m;
}

ErrorCode code_of(const Matrix& w) {
  try {
    validate_graph(w);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InvalidArgument;
}
}  // namespace

TEST_CASE("validate_graph accepts the minimal graph") {
  const Graph g = validate_graph(mat({{0, 1}, {1, 0}}));
  CHECK(g.size() == 2);
  CHECK(g.edge_count() == 1);
}

TEST_CASE("validate_graph reports each violation") {
  CHECK(code_of(mat({{0, 1}, {0, 0}})) == ErrorCode::AsymmetricMatrix);
  CHECK(code_of(mat({{0.5, 1}, {1, 0}})) == ErrorCode::NonzeroDiagonal);
  CHECK(code_of(mat({{0, -1}, {-1, 0}})) == ErrorCode::NegativeWeight);
  CHECK(code_of(mat({{0, NAN}, {NAN, 0}})) == ErrorCode::NonFiniteValue);
  CHECK(code_of(Matrix::Zero(2, 3)) == ErrorCode::DimensionMismatch);

  try {
    validate_graph(mat({{0, 1, 0}, {1, 0, 2}, {0, 1, 0}}));
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("(2, 1)") != std::string::npos);
  }
}

TEST_CASE("degrees are row sums") {
  CHECK(degrees(validate_graph(mat({{0, 1}, {1, 0}}))) == Vector::Ones(2));
  const Vector d = degrees(validate_graph(mat({{0, 2, 0}, {2, 0, 1}, {0, 1, 0}})));
  CHECK(d(0) == 2.0);
  CHECK(d(1) == 3.0);
  CHECK(d(2) == 1.0);
  CHECK(degrees(validate_graph(Matrix::Zero(4, 4))).isZero(0.0));
}

TEST_CASE("normalized Laplacian of small graphs") {
  const Matrix l = normalized_laplacian(validate_graph(mat({{0, 1}, {1, 0}})));
  CHECK(l.isApprox(mat({{1, -1}, {-1, 1}})));

  // Every vertex isolated: D^{-1/2} is zero, so is the diagonal.
  CHECK(normalized_laplacian(validate_graph(Matrix::Zero(3, 3))).isZero(0.0));

  // One isolated vertex among connected ones.
  const Matrix l3 = normalized_laplacian(validate_graph(mat({{0, 1, 0}, {1, 0, 0}, {0, 0, 0}})));
  CHECK(l3(0, 0) == 1.0);
  CHECK(l3(2, 2) == 0.0);
  CHECK(l3.row(2).isZero(0.0));
}

TEST_CASE("normalized Laplacian matches the loop oracle and is exactly symmetric") {
  Rng rng(11);
  for (int t = 0; t < 25; ++t) {
    const Eigen::Index n = 3 + static_cast<Eigen::Index>(rng.below(8));
    const Matrix w = oracle::random_weights(n, rng, 0.5);
    const Matrix l = normalized_laplacian(validate_graph(w));
    CHECK((l - oracle::laplacian_loops(w)).cwiseAbs().maxCoeff() < 1e-14);
    CHECK((l - l.transpose()).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("spectrum of the normalized Laplacian lies in [0, 2]") {
  Rng rng(5);
  for (int t = 0; t < 20; ++t) {
    const Matrix w = oracle::random_weights(5, rng);
    const Matrix l = normalized_laplacian(validate_graph(w));
    const Vector ev = Eigen::SelfAdjointEigenSolver<Matrix>(l).eigenvalues();
    CHECK(ev.minCoeff() >= -1e-9);
    CHECK(ev.maxCoeff() <= 2.0 + 1e-9);
    // Non-isolated vertices have unit diagonal.
    CHECK((l.diagonal().array() - 1.0).abs().maxCoeff() < 1e-15);
  }
}

TEST_CASE("floored Laplacian agrees when degrees exceed the floor") {
  Rng rng(3);
  const Matrix w = oracle::random_weights(6, rng);
  CHECK((normalized_laplacian_floored(w, 1e-8) -
         normalized_laplacian(validate_graph(w)))
            .cwiseAbs()
            .maxCoeff() < 1e-15);
  // An isolated vertex keeps a unit diagonal under the floor.
  Matrix z = Matrix::Zero(3, 3);
  CHECK(normalized_laplacian_floored(z, 1e-8).isIdentity(0.0));
}

TEST_CASE("matrix powers") {
  const Matrix l = normalized_laplacian(validate_graph(mat({{0, 1}, {1, 0}})));
  const auto p0 = matrix_powers(l, 0);
  REQUIRE(p0.size() == 1);
  CHECK(p0[0].isIdentity(0.0));

  const auto p2 = matrix_powers(l, 2);
  REQUIRE(p2.size() == 3);
  CHECK(p2[1] == l);
  CHECK(p2[2].isApprox(mat({{2, -2}, {-2, 2}})));

  CHECK_THROWS_AS(matrix_powers(l, -1), Error);
}

TEST_CASE("matrix powers compose: P[a+b] = P[a] P[b]") {
  Rng rng(8);
  for (int t = 0; t < 10; ++t) {
    const Eigen::Index n = 4 + static_cast<Eigen::Index>(rng.below(6));
    const Matrix l = normalized_laplacian(validate_graph(oracle::random_weights(n, rng)));
    const auto p = matrix_powers(l, 6);
    CHECK((p[4] - p[2] * p[2]).norm() < 1e-12);
    for (int a = 0; a <= 6; ++a)
      for (int b = 0; a + b <= 6; ++b)
        CHECK((p[static_cast<std::size_t>(a + b)] -
               p[static_cast<std::size_t>(a)] * p[static_cast<std::size_t>(b)])
                  .norm() <= 1e-10 * static_cast<double>(n));
  }
}
