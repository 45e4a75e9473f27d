#pragma once

#include <Eigen/Dense>

#include <vector>

#include "graphlearn/error.hpp"

namespace graphlearn {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Undirected weighted graph over N >= 2 vertices.
///
/// The weight matrix is dense, symmetric, nonnegative and has a zero
/// diagonal. Instances can only be obtained through validate_graph() or the
/// trusted factories in this library, so every Graph satisfies these
/// invariants.
class Graph {
 public:
  Eigen::Index size() const noexcept { return weights_.rows(); }
  const Matrix& weights() const noexcept { return weights_; }

  /// Number of unordered pairs (i < j) with positive weight.
  Eigen::Index edge_count() const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.weights_ == b.weights_;
  }

 private:
  explicit Graph(Matrix weights) : weights_(std::move(weights)) {}
  friend Graph validate_graph(Matrix weights);
  friend Graph graph_from_trusted(Matrix weights);

  Matrix weights_;
};

/// Checks square shape, finiteness, symmetry (exact), zero diagonal and
/// nonnegativity. Throws Error naming the first offending index.
Graph validate_graph(Matrix weights);

// For matrices produced by construction (projection, thresholding,
// generators). Still validated in debug builds.
Graph graph_from_trusted(Matrix weights);

/// d_i = sum_j W_ij.
Vector degrees(const Graph& g);

/// L = I - D^{-1/2} W D^{-1/2}. Isolated vertices get (D^{-1/2})_ii = 0,
/// which also zeroes their diagonal entry of L.
Matrix normalized_laplacian(const Graph& g);

/// Same as normalized_laplacian() but with degrees floored at `floor` before
/// inversion. Used on optimization iterates whose vertices may be nearly
/// isolated.
Matrix normalized_laplacian_floored(const Matrix& weights, double floor);

/// [L^0, L^1, ..., L^k_max].
std::vector<Matrix> matrix_powers(const Matrix& laplacian, int k_max);

}  // namespace graphlearn
