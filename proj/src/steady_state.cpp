#include "heatchain/steady_state.hpp"

#include <Eigen/Dense>
#include <Eigen/UmfPackSupport>

#include <cmath>
#include <complex>
#include <random>
#include <sstream>

namespace heatchain {

namespace {

double inf_norm(const SparseMatrix& m) {
  RealVector row_sums = RealVector::Zero(m.rows());
  for (int k = 0; k < m.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(m, k); it; ++it)
      row_sums(it.row()) += std::abs(it.value());
  return row_sums.size() > 0 ? row_sums.maxCoeff() : 0.0;
}

// Scale by the complex trace (fixes the arbitrary kernel phase), then
// Hermitize and renormalize. Order matters: Hermitizing first would cancel
// the state entirely for a kernel vector with purely imaginary phase.
DenseMatrix finalize_state(const DenseVector& raw) {
  DenseMatrix rho = devectorize(raw);
  const Complex tr = rho.trace();
  if (std::abs(tr) < 1e-14 * raw.norm())
    throw ConvergenceError("steady-state candidate is traceless", std::abs(tr));
  rho /= tr;
  rho = DenseMatrix((rho + rho.adjoint()) / 2.0);
  rho /= rho.trace().real();
  return rho;
}

DenseMatrix solve_dense(const SparseMatrix& liouvillian, const SolverOptions& opts) {
  DenseMatrix dense = DenseMatrix(liouvillian);
  Eigen::FullPivLU<DenseMatrix> lu(dense);
  lu.setThreshold(opts.rank_tolerance);
  const Eigen::Index nullity = dense.rows() - lu.rank();
  if (nullity > 1)
    throw DegenerateSteadyStateError(
        "Liouvillian null space has dimension " + std::to_string(nullity) +
            "; the steady state is not unique",
        static_cast<int>(nullity));
  if (nullity < 1)
    throw ConvergenceError(
        "no null vector found at rank tolerance " + std::to_string(opts.rank_tolerance),
        opts.rank_tolerance);
  DenseVector kernel = lu.kernel().col(0);
  return finalize_state(kernel);
}

DenseMatrix solve_sparse(const SparseMatrix& liouvillian, const SolverOptions& opts) {
  const Eigen::Index n = liouvillian.rows();
  const double scale = std::max(inf_norm(liouvillian), 1.0);

  // Shift-invert: the factorization of L - eps*I turns the null vector into
  // the dominant eigenvector of the inverse, with gap ~ |lambda_2| / eps.
  SparseMatrix shifted = liouvillian;
  Eigen::UmfPackLU<SparseMatrix> lu;
  double eps = 1e-8 * scale;
  for (int attempt = 0;; ++attempt) {
    SparseMatrix id(n, n);
    id.setIdentity();
    shifted = liouvillian - Complex(eps) * id;
    shifted.makeCompressed();
    lu.compute(shifted);
    if (lu.info() == Eigen::Success) break;
    if (attempt >= 2)
      throw ConvergenceError("sparse factorization of the shifted Liouvillian failed", eps);
    eps *= 100.0;
  }

  // Two-vector inverse iteration. The first vector converges to the steady
  // state; the second is kept orthogonal and only reaches a comparable
  // residual when a second null vector exists.
  std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  DenseVector v1 = DenseVector::Zero(n);
  const auto dim = static_cast<Eigen::Index>(std::llround(std::sqrt(double(n))));
  for (Eigen::Index i = 0; i < dim; ++i) v1(i * dim + i) = 1.0;  // vec(I): good overlap
  v1.normalize();
  DenseVector v2(n);
  for (Eigen::Index i = 0; i < n; ++i) v2(i) = Complex(unit(rng), unit(rng));
  v2 -= v1.dot(v2) * v1;
  v2.normalize();

  double residual1 = std::numeric_limits<double>::infinity();
  double residual2 = std::numeric_limits<double>::infinity();
  for (int iter = 0; iter < opts.max_iterations; ++iter) {
    DenseVector w1 = lu.solve(v1);
    DenseVector w2 = lu.solve(v2);
    if (lu.info() != Eigen::Success)
      throw ConvergenceError("shifted solve failed during inverse iteration", residual1);
    v1 = w1.normalized();
    w2 -= v1.dot(w2) * v1;
    if (w2.norm() < 1e-300) {
      for (Eigen::Index i = 0; i < n; ++i) w2(i) = Complex(unit(rng), unit(rng));
      w2 -= v1.dot(w2) * v1;
    }
    v2 = w2.normalized();
    residual1 = (liouvillian * v1).norm() / scale;
    residual2 = (liouvillian * v2).norm() / scale;
    if (residual1 <= opts.residual_tolerance && iter >= 1) break;
  }
  if (residual1 > opts.residual_tolerance)
    throw ConvergenceError(
        "inverse iteration stalled at relative residual " + std::to_string(residual1),
        residual1);
  if (residual2 <= 1e-8)
    throw DegenerateSteadyStateError(
        "second orthogonal null vector found (relative residual " +
            std::to_string(residual2) + "); the steady state is not unique",
        2);
  return finalize_state(v1);
}

}  // namespace

double steady_state_residual(const SparseMatrix& liouvillian, const DenseMatrix& rho) {
  DenseVector v = vectorize(rho);
  const double denom = std::max(inf_norm(liouvillian), 1e-300) * v.norm();
  return (liouvillian * v).norm() / denom;
}

void validate_density_matrix(const DenseMatrix& rho) {
  if (rho.rows() != rho.cols()) throw ShapeError("density matrix is not square");
  const double herm = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  if (herm > 1e-10)
    throw ConvergenceError("state is not Hermitian within 1e-10", herm);
  const double trace_err = std::abs(rho.trace() - Complex(1.0));
  if (trace_err > 1e-12)
    throw ConvergenceError("state trace deviates from one beyond 1e-12", trace_err);
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(rho, Eigen::EigenvaluesOnly);
  const double min_eig = es.eigenvalues().minCoeff();
  if (min_eig < -1e-10)
    throw ConvergenceError("state has a negative eigenvalue beyond -1e-10", min_eig);
}

DenseMatrix solve_steady_state(const SparseMatrix& liouvillian, const SolverOptions& opts) {
  if (liouvillian.rows() != liouvillian.cols())
    throw ShapeError("Liouvillian must be square");
  const auto dim = static_cast<Eigen::Index>(
      std::llround(std::sqrt(double(liouvillian.rows()))));
  if (dim * dim != liouvillian.rows())
    throw ShapeError("Liouvillian size is not a perfect square");

  SolveMethod method = opts.method;
  if (method == SolveMethod::Auto) {
    const Eigen::Index dense_cap = Eigen::Index(1) << (2 * opts.dense_threshold_sites);
    method = liouvillian.rows() <= dense_cap ? SolveMethod::DenseNullspace
                                             : SolveMethod::SparseShiftedIteration;
  }

  DenseMatrix rho = method == SolveMethod::DenseNullspace ? solve_dense(liouvillian, opts)
                                                          : solve_sparse(liouvillian, opts);
  const double residual = steady_state_residual(liouvillian, rho);
  if (residual > opts.residual_tolerance)
    throw ConvergenceError(
        "steady state residual " + std::to_string(residual) + " exceeds tolerance",
        residual);
  validate_density_matrix(rho);
  return rho;
}

DenseMatrix solve_steady_state(const ChainSpec& spec, const SolverOptions& opts) {
  spec.validate();
  return solve_steady_state(assemble_liouvillian(spec), opts);
}

}  // namespace heatchain
