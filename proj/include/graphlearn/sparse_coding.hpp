#pragma once

#include <vector>

#include "graphlearn/codes.hpp"
#include "graphlearn/dictionary.hpp"

namespace graphlearn {

/// Observed graph signals Y, one signal per column (N x M).
class SignalSet {
 public:
  /// Throws NonFiniteValue on NaN/inf entries.
  explicit SignalSet(Matrix signals);

  const Matrix& signals() const noexcept { return signals_; }
  Eigen::Index vertex_count() const noexcept { return signals_.rows(); }
  Eigen::Index signal_count() const noexcept { return signals_.cols(); }

 private:
  Matrix signals_;
};

struct OmpResult {
  Vector coefficients;                // length = atom count
  std::vector<Eigen::Index> support;  // in selection order
  std::vector<double> residual_norms; // ||y|| followed by one entry per step
};

// Residual norm below which pursuit stops before exhausting the budget.
inline constexpr double kOmpEarlyStop = 1e-10;

/// Orthogonal matching pursuit on a unit-norm dictionary.
///
/// Each step picks the atom with the largest |<atom, residual>| (lowest
/// index on ties, already selected atoms excluded), then refits all
/// selected coefficients by least squares on y. The refit uses a complete
/// orthogonal decomposition, so a rank-deficient support yields the
/// minimum-norm solution instead of failing.
OmpResult omp_encode_one(const Matrix& unit_atoms, const Vector& y, int t0);

/// Column-wise omp_encode_one. `d` must be normalized.
SparseCodeMatrix omp_encode_all(const Dictionary& d, const SignalSet& ys,
                                int t0);

}  // namespace graphlearn
