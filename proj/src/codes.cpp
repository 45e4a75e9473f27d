#include "graphlearn/codes.hpp"

#include <cmath>
#include <string>

namespace graphlearn {

SparseCodeMatrix::SparseCodeMatrix(Matrix codes, int t0)
    : codes_(std::move(codes)), t0_(t0) {
  if (t0_ < 1) throw Error(ErrorCode::InvalidArgument, "t0 must be >= 1");
  for (Eigen::Index m = 0; m < codes_.cols(); ++m)
    if (column_support_size(codes_, m) > t0_)
      throw Error(ErrorCode::InvalidArgument,
                  "code column " + std::to_string(m) + " exceeds budget t0=" +
                      std::to_string(t0_));
}

Eigen::Index column_support_size(const Matrix& codes, Eigen::Index m,
                                 double tol) {
  return (codes.col(m).array().abs() > tol).count();
}

}  // namespace graphlearn
