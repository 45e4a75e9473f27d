#include "graphlearn/sparse_coding.hpp"

#include <cmath>
#include <string>

namespace graphlearn {

SignalSet::SignalSet(Matrix signals) : signals_(std::move(signals)) {
  if (!signals_.allFinite())
    throw Error(ErrorCode::NonFiniteValue, "signal matrix");
}

OmpResult omp_encode_one(const Matrix& unit_atoms, const Vector& y, int t0) {
  const Eigen::Index n_atoms = unit_atoms.cols();
  if (y.size() != unit_atoms.rows())
    throw Error(ErrorCode::DimensionMismatch,
                "signal length " + std::to_string(y.size()) +
                    " vs dictionary rows " + std::to_string(unit_atoms.rows()));
  if (t0 < 1 || t0 > n_atoms)
    throw Error(ErrorCode::InvalidArgument,
                "t0 must be in [1, " + std::to_string(n_atoms) + "]");

  OmpResult out;
  out.coefficients = Vector::Zero(n_atoms);
  out.support.reserve(static_cast<std::size_t>(t0));
  std::vector<bool> selected(static_cast<std::size_t>(n_atoms), false);

  Vector residual = y;
  out.residual_norms.push_back(residual.norm());
  Vector local;

  for (int step = 0; step < t0; ++step) {
    if (out.residual_norms.back() < kOmpEarlyStop) break;

    const Vector corr = unit_atoms.transpose() * residual;
    Eigen::Index best = -1;
    double best_abs = -1.0;
    for (Eigen::Index j = 0; j < n_atoms; ++j) {
      if (selected[static_cast<std::size_t>(j)]) continue;
      const double a = std::abs(corr(j));
      if (a > best_abs) {
        best_abs = a;
        best = j;
      }
    }
    selected[static_cast<std::size_t>(best)] = true;
    out.support.push_back(best);

    Matrix sub(unit_atoms.rows(), static_cast<Eigen::Index>(out.support.size()));
    for (std::size_t c = 0; c < out.support.size(); ++c)
      sub.col(static_cast<Eigen::Index>(c)) = unit_atoms.col(out.support[c]);
    local = sub.completeOrthogonalDecomposition().solve(y);
    if (!local.allFinite())
      throw Error(ErrorCode::RankDeficientSupport,
                  "least-squares refit failed at step " + std::to_string(step));

    residual = y - sub * local;
    out.residual_norms.push_back(residual.norm());
  }

  for (std::size_t c = 0; c < out.support.size(); ++c)
    out.coefficients(out.support[c]) = local(static_cast<Eigen::Index>(c));
  return out;
}

SparseCodeMatrix omp_encode_all(const Dictionary& d, const SignalSet& ys,
                                int t0) {
  if (!d.normalized())
    throw Error(ErrorCode::InvalidArgument,
                "OMP requires a normalized dictionary");
  if (ys.vertex_count() != d.vertex_count())
    throw Error(ErrorCode::DimensionMismatch,
                "signals have " + std::to_string(ys.vertex_count()) +
                    " rows, dictionary has " +
                    std::to_string(d.vertex_count()));
  Matrix codes(d.atom_count(), ys.signal_count());
  for (Eigen::Index m = 0; m < ys.signal_count(); ++m) {
    try {
      codes.col(m) = omp_encode_one(d.atoms, ys.signals().col(m), t0).coefficients;
    } catch (const Error& e) {
      throw Error(e.code(), "signal " + std::to_string(m) + ": " + e.what());
    }
  }
  return SparseCodeMatrix(std::move(codes), t0);
}

}  // namespace graphlearn
