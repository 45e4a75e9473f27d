#include "graphlearn/dictionary.hpp"

#include <string>

namespace graphlearn {

namespace {
constexpr double kZeroAtomNorm = 1e-12;
}

Dictionary build_dictionary(const Graph& g, const KernelSpec& spec) {
  return build_dictionary(matrix_powers(normalized_laplacian(g), spec.degree()),
                          spec);
}

Dictionary build_dictionary(const std::vector<Matrix>& powers,
                            const KernelSpec& spec) {
  if (powers.empty() ||
      static_cast<int>(powers.size()) < spec.degree() + 1)
    throw Error(ErrorCode::DimensionMismatch,
                "power cache shorter than kernel degree + 1");
  const Eigen::Index n = powers.front().rows();
  const int s_count = spec.kernel_count();
  Dictionary d;
  d.kernel_count = s_count;
  d.atoms = Matrix::Zero(n, n * s_count);
  for (int s = 0; s < s_count; ++s) {
    auto block = d.atoms.middleCols(s * n, n);
    for (int k = 0; k <= spec.degree(); ++k) {
      const double a = spec.coeffs()(s, k);
      if (a != 0.0) block += a * powers[static_cast<std::size_t>(k)];
    }
  }
  return d;
}

Dictionary normalize_atoms(Dictionary d) {
  Vector norms = d.atoms.colwise().norm().transpose();
  for (Eigen::Index j = 0; j < norms.size(); ++j) {
    if (!(norms(j) > kZeroAtomNorm))
      throw Error(ErrorCode::ZeroAtom, "atom " + std::to_string(j) +
                                           " has norm " +
                                           std::to_string(norms(j)));
    d.atoms.col(j) /= norms(j);
  }
  d.atom_norms = std::move(norms);
  return d;
}

SparseCodeMatrix renormalize_codes(const SparseCodeMatrix& x,
                                   const Vector& atom_norms) {
  if (atom_norms.size() != x.atom_count())
    throw Error(ErrorCode::DimensionMismatch,
                "atom_norms length does not match code rows");
  Matrix scaled = atom_norms.cwiseInverse().asDiagonal() * x.codes();
  return SparseCodeMatrix(std::move(scaled), x.t0());
}

}  // namespace graphlearn
