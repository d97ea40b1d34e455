#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

namespace heatchain {

using Complex = std::complex<double>;
using DenseMatrix = Eigen::MatrixXcd;
using DenseVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using SparseMatrix = Eigen::SparseMatrix<Complex>;
using Triplet = Eigen::Triplet<Complex>;

/// Invalid physical specification (negative rates, divergent occupations, ...).
class SpecError : public std::invalid_argument {
 public:
  explicit SpecError(const std::string& what) : std::invalid_argument(what) {}
};

/// Matrix/vector dimensions do not match the expected Hilbert-space layout.
class ShapeError : public std::invalid_argument {
 public:
  explicit ShapeError(const std::string& what) : std::invalid_argument(what) {}
};

/// The Liouvillian null space has dimension > 1; no unique steady state.
class DegenerateSteadyStateError : public std::runtime_error {
 public:
  DegenerateSteadyStateError(const std::string& what, int nullity)
      : std::runtime_error(what), nullity_(nullity) {}
  int nullity() const { return nullity_; }

 private:
  int nullity_;
};

/// Solver failed to reach the requested residual.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

/// A closed-form expression was requested outside its domain of validity.
class UnsupportedFormulaError : public std::logic_error {
 public:
  explicit UnsupportedFormulaError(const std::string& what) : std::logic_error(what) {}
};

/// Fewer data points than the operation needs.
class InsufficientDataError : public std::invalid_argument {
 public:
  explicit InsufficientDataError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace heatchain
