#include "graphlearn/kernels.hpp"

#include <cmath>
#include <string>

namespace graphlearn {

namespace {

void check_taylor_args(double tau, int degree) {
  if (!(tau > 0.0) || !std::isfinite(tau))
    throw Error(ErrorCode::InvalidTau, "tau must be positive, got " +
                                           std::to_string(tau));
  if (degree < 1)
    throw Error(ErrorCode::InvalidArgument, "degree must be >= 1");
}

}  // namespace

KernelSpec::KernelSpec(Matrix coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.rows() < 1 || coeffs_.cols() < 2)
    throw Error(ErrorCode::DimensionMismatch,
                "kernel spec needs >= 1 row and >= 2 coefficients per row");
  if (!coeffs_.allFinite())
    throw Error(ErrorCode::NonFiniteValue, "kernel coefficients");
  for (Eigen::Index s = 0; s < coeffs_.rows(); ++s)
    if ((coeffs_.row(s).array() == 0.0).all())
      throw Error(ErrorCode::InvalidArgument,
                  "kernel row " + std::to_string(s) + " is identically zero");
}

Vector taylor_heat(double tau, int degree) {
  check_taylor_args(tau, degree);
  Vector c(degree + 1);
  c(0) = 1.0;
  for (int k = 1; k <= degree; ++k) c(k) = c(k - 1) * (-tau) / k;
  return c;
}

Vector taylor_one_minus_heat(double tau, int degree) {
  Vector c = -taylor_heat(tau, degree);
  c(0) = 0.0;
  return c;
}

namespace {
KernelSpec stack(const Vector& a, const Vector& b) {
  Matrix m(2, a.size());
  m.row(0) = a.transpose();
  m.row(1) = b.transpose();
  return KernelSpec(std::move(m));
}
}  // namespace

KernelSpec general_kernels(int degree) {
  return stack(taylor_heat(2.0, degree), taylor_one_minus_heat(1.0, degree));
}

KernelSpec lowpass_kernels(int degree) {
  return stack(taylor_heat(2.0, degree), taylor_heat(1.0, degree));
}

double eval_kernel(std::span<const double> coeffs, double lambda) {
  double acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
    acc = acc * lambda + *it;
  return acc;
}

double eval_kernel(const Vector& coeffs, double lambda) {
  return eval_kernel(std::span<const double>(coeffs.data(), coeffs.size()),
                     lambda);
}

}  // namespace graphlearn
