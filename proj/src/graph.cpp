#include "graphlearn/graph.hpp"

#include <cassert>
#include <cmath>
#include <string>

namespace graphlearn {

namespace {

std::string at(Eigen::Index i, Eigen::Index j) {
  return "(" + std::to_string(i) + ", " + std::to_string(j) + ")";
}

Vector inv_sqrt_degrees(const Vector& d, double floor) {
  Vector out(d.size());
  for (Eigen::Index i = 0; i < d.size(); ++i) {
    const double di = std::max(d(i), floor);
    out(i) = di > 0.0 ? 1.0 / std::sqrt(di) : 0.0;
  }
  return out;
}

Matrix laplacian_from(const Matrix& w, const Vector& p) {
  const Eigen::Index n = w.rows();
  Matrix l = -(p.asDiagonal() * w * p.asDiagonal());
  for (Eigen::Index i = 0; i < n; ++i) l(i, i) += p(i) > 0.0 ? 1.0 : 0.0;
  // Cancel rounding drift so downstream code can rely on exact symmetry.
  return (0.5 * (l + l.transpose())).eval();
}

}  // namespace

Eigen::Index Graph::edge_count() const {
  Eigen::Index count = 0;
  for (Eigen::Index j = 1; j < size(); ++j)
    for (Eigen::Index i = 0; i < j; ++i)
      if (weights_(i, j) > 0.0) ++count;
  return count;
}

Graph validate_graph(Matrix weights) {
  const Eigen::Index n = weights.rows();
  if (n != weights.cols())
    throw Error(ErrorCode::DimensionMismatch,
                "weight matrix is " + std::to_string(n) + "x" +
                    std::to_string(weights.cols()));
  if (n < 2)
    throw Error(ErrorCode::DimensionMismatch, "graph needs at least 2 vertices");
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      const double v = weights(i, j);
      if (!std::isfinite(v))
        throw Error(ErrorCode::NonFiniteValue, "entry " + at(i, j));
      if (i == j && v != 0.0)
        throw Error(ErrorCode::NonzeroDiagonal, "entry " + at(i, j));
      if (v < 0.0) throw Error(ErrorCode::NegativeWeight, "entry " + at(i, j));
      if (v != weights(j, i))
        throw Error(ErrorCode::AsymmetricMatrix, "entry " + at(i, j));
    }
  }
  return Graph(std::move(weights));
}

Graph graph_from_trusted(Matrix weights) {
#ifndef NDEBUG
  return validate_graph(std::move(weights));
#else
  return Graph(std::move(weights));
#endif
}

Vector degrees(const Graph& g) { return g.weights().rowwise().sum(); }

Matrix normalized_laplacian(const Graph& g) {
  return laplacian_from(g.weights(), inv_sqrt_degrees(degrees(g), 0.0));
}

Matrix normalized_laplacian_floored(const Matrix& weights, double floor) {
  return laplacian_from(weights,
                        inv_sqrt_degrees(weights.rowwise().sum(), floor));
}

std::vector<Matrix> matrix_powers(const Matrix& laplacian, int k_max) {
  if (k_max < 0)
    throw Error(ErrorCode::InvalidArgument, "k_max must be nonnegative");
  std::vector<Matrix> powers;
  powers.reserve(static_cast<std::size_t>(k_max) + 1);
  powers.push_back(Matrix::Identity(laplacian.rows(), laplacian.cols()));
  for (int k = 1; k <= k_max; ++k) powers.push_back(powers.back() * laplacian);
  return powers;
}

}  // namespace graphlearn
