#pragma once

#include "heatchain/chain_spec.hpp"
#include "heatchain/liouvillian.hpp"
#include "heatchain/types.hpp"

namespace heatchain {

enum class SolveMethod {
  Auto,                    // dense below the threshold, sparse above
  DenseNullspace,          // rank-revealing kernel extraction of dense L
  SparseShiftedIteration,  // shift-invert iteration on sparse L
};

struct SolverOptions {
  SolveMethod method = SolveMethod::Auto;
  double residual_tolerance = 1e-12;  // relative: ||L rho|| <= tol * ||L|| * ||rho||
  int max_iterations = 64;            // shift-invert refinement steps
  int dense_threshold_sites = 4;      // Auto uses the dense path for N <= this
  // Rank threshold for the dense kernel: pivots below rank_tolerance * max
  // pivot count as zero. The Liouvillian always has at least one null vector;
  // a second one below this level reports a degenerate steady state.
  double rank_tolerance = 1e-9;
};

/// Solves L rho = 0 with Tr rho = 1 for the unique steady state.
/// The raw kernel vector is scaled by its complex trace, Hermitized as
/// rho <- (rho + rho^dag)/2 and trace-normalized, in that order.
/// Throws DegenerateSteadyStateError when the null space has dimension > 1
/// and ConvergenceError when the residual cannot be met or the state fails
/// its structural checks (Hermiticity, unit trace, positivity).
DenseMatrix solve_steady_state(const SparseMatrix& liouvillian,
                               const SolverOptions& opts = {});

/// Convenience: assemble the Liouvillian from a ChainSpec and solve.
DenseMatrix solve_steady_state(const ChainSpec& spec, const SolverOptions& opts = {});

/// Structural checks on a density matrix: Hermitian (1e-10), unit trace
/// (1e-12), positive semidefinite (min eigenvalue > -1e-10). Throws
/// ConvergenceError with a description on violation.
void validate_density_matrix(const DenseMatrix& rho);

/// Relative steady-state residual ||L vec(rho)||_2 / (||L||_inf ||vec(rho)||_2).
double steady_state_residual(const SparseMatrix& liouvillian, const DenseMatrix& rho);

}  // namespace heatchain
