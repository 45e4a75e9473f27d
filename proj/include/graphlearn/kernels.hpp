#pragma once

#include <span>
#include <vector>

#include "graphlearn/graph.hpp"

namespace graphlearn {

/// Polynomial coefficients of S generating kernels g_s(lambda) of degree K.
/// Row s holds alpha_{s0} ... alpha_{sK}.
class KernelSpec {
 public:
  /// Throws DimensionMismatch / InvalidArgument when the matrix is empty,
  /// has fewer than 2 columns, non-finite entries or an all-zero row.
  explicit KernelSpec(Matrix coeffs);

  int kernel_count() const noexcept { return static_cast<int>(coeffs_.rows()); }
  int degree() const noexcept { return static_cast<int>(coeffs_.cols()) - 1; }
  const Matrix& coeffs() const noexcept { return coeffs_; }
  Vector row(int s) const { return coeffs_.row(s).transpose(); }

 private:
  Matrix coeffs_;
};

/// Maclaurin coefficients of exp(-tau * lambda): (-tau)^k / k!.
Vector taylor_heat(double tau, int degree);

/// Maclaurin coefficients of 1 - exp(-tau * lambda).
Vector taylor_one_minus_heat(double tau, int degree);

/// exp(-2 lambda) and 1 - exp(-lambda): one low-pass and one high-pass kernel.
KernelSpec general_kernels(int degree);

/// exp(-2 lambda) and exp(-lambda): both low-pass.
KernelSpec lowpass_kernels(int degree);

/// Horner evaluation of sum_k coeffs[k] * lambda^k.
double eval_kernel(std::span<const double> coeffs, double lambda);
double eval_kernel(const Vector& coeffs, double lambda);

}  // namespace graphlearn
