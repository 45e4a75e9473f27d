#pragma once

#include "graphlearn/graph.hpp"

namespace graphlearn {

/// Coefficient matrix X (atoms x signals) with a per-column L0 budget.
class SparseCodeMatrix {
 public:
  /// Throws InvalidArgument if t0 < 1 or any column has more than t0
  /// nonzero entries.
  SparseCodeMatrix(Matrix codes, int t0);

  const Matrix& codes() const noexcept { return codes_; }
  int t0() const noexcept { return t0_; }
  Eigen::Index atom_count() const noexcept { return codes_.rows(); }
  Eigen::Index signal_count() const noexcept { return codes_.cols(); }

  friend bool operator==(const SparseCodeMatrix&,
                         const SparseCodeMatrix&) = default;

 private:
  Matrix codes_;
  int t0_;
};

/// Number of entries in column `m` with magnitude above `tol`.
Eigen::Index column_support_size(const Matrix& codes, Eigen::Index m,
                                 double tol = 0.0);

}  // namespace graphlearn
