#pragma once

#include <optional>
#include <vector>

#include "graphlearn/codes.hpp"
#include "graphlearn/graph.hpp"
#include "graphlearn/kernels.hpp"

namespace graphlearn {

/// Structured dictionary [D_1 ... D_S] with D_s = sum_k alpha_{sk} L^k.
///
/// Atom index a = s * N + v is the atom of subdictionary s centred at
/// vertex v. Evaluation compares code supports by this index, so it must
/// not change.
struct Dictionary {
  Matrix atoms;  // N x (N * S)
  int kernel_count = 0;
  /// Original column norms, set by normalize_atoms().
  std::optional<Vector> atom_norms;

  Eigen::Index vertex_count() const noexcept { return atoms.rows(); }
  Eigen::Index atom_count() const noexcept { return atoms.cols(); }
  bool normalized() const noexcept { return atom_norms.has_value(); }
};

inline Eigen::Index atom_index(int subdictionary, Eigen::Index vertex,
                               Eigen::Index n) {
  return subdictionary * n + vertex;
}

Dictionary build_dictionary(const Graph& g, const KernelSpec& spec);

/// Assembles from a precomputed power cache [L^0 .. L^K'] with K' >= K.
Dictionary build_dictionary(const std::vector<Matrix>& powers,
                            const KernelSpec& spec);

/// Divides each atom by its Euclidean norm and records the norms.
/// Throws ZeroAtom if a column norm is <= 1e-12.
Dictionary normalize_atoms(Dictionary d);

/// Divides row j of the codes by atom_norms[j], so that
/// D_original * X' == D_normalized * X.
SparseCodeMatrix renormalize_codes(const SparseCodeMatrix& x,
                                   const Vector& atom_norms);

}  // namespace graphlearn
