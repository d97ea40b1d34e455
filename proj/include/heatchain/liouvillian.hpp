#pragma once

#include <iosfwd>
#include <vector>

#include "heatchain/chain_spec.hpp"
#include "heatchain/operators.hpp"
#include "heatchain/types.hpp"

namespace heatchain {

// Vectorization convention: column-stacking, vec(rho)[col * dim + row] =
// rho(row, col), so that vec(A rho B) = (B^T (x) A) vec(rho). Eigen stores
// matrices column-major, which makes vec/devec reshapes.

/// Column-stacks a square matrix into a vector of length dim^2.
DenseVector vectorize(const DenseMatrix& rho);

/// Inverse of vectorize; throws ShapeError unless the length is a perfect square.
DenseMatrix devectorize(const DenseVector& v);

/// Lindblad generator as a sparse matrix on vectorized density matrices:
///   L = -i (I (x) H - H^T (x) I)
///     + sum_j r_j [ conj(A_j) (x) A_j - 1/2 I (x) A_j^dag A_j
///                   - 1/2 (A_j^dag A_j)^T (x) I ].
SparseMatrix assemble_liouvillian(const ChainSpec& spec);

/// Same, from an explicit Hamiltonian and jump set (dimension 4^N from H).
SparseMatrix assemble_liouvillian(const SparseMatrix& hamiltonian,
                                  const std::vector<WeightedJump>& jumps);

/// Superoperator for a subset of the jump terms only (no coherent part);
/// used for per-bath dissipators. Dimension matches the operators.
SparseMatrix dissipator_superoperator(const std::vector<WeightedJump>& jumps, int dim);

/// devectorize(L * vectorize(rho)); throws ShapeError on mismatch.
DenseMatrix apply_liouvillian(const SparseMatrix& liouvillian, const DenseMatrix& rho);

/// Applies the dissipator of a jump subset directly in Hilbert space:
///   D(rho) = sum_j r_j (A_j rho A_j^dag - 1/2 {A_j^dag A_j, rho}).
DenseMatrix apply_dissipator(const std::vector<WeightedJump>& jumps, const DenseMatrix& rho);

/// Writes the sparse triplets as text lines "row col real imag" (0-based,
/// row-sorted within columns), preceded by one header line "dim dim nnz".
void dump_triplets(const SparseMatrix& m, std::ostream& out);

}  // namespace heatchain
