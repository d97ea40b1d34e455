#include "heatchain/liouvillian.hpp"

#include <cmath>
#include <limits>
#include <ostream>

namespace heatchain {

DenseVector vectorize(const DenseMatrix& rho) {
  if (rho.rows() != rho.cols()) throw ShapeError("vectorize: matrix must be square");
  return Eigen::Map<const DenseVector>(rho.data(), rho.size());
}

DenseMatrix devectorize(const DenseVector& v) {
  const auto dim = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(v.size()))));
  if (dim * dim != v.size()) {
    throw ShapeError("devectorize: length is not a perfect square");
  }
  return Eigen::Map<const DenseMatrix>(v.data(), dim, dim);
}

namespace {

// Appends scale * kron(a, b) as triplets.
void append_kron(std::vector<Triplet>& trips, const SparseMatrix& a,
                 const SparseMatrix& b, Complex scale) {
  for (int ka = 0; ka < a.outerSize(); ++ka) {
    for (SparseMatrix::InnerIterator ita(a, ka); ita; ++ita) {
      const Complex va = scale * ita.value();
      for (int kb = 0; kb < b.outerSize(); ++kb) {
        for (SparseMatrix::InnerIterator itb(b, kb); itb; ++itb) {
          trips.emplace_back(ita.row() * b.rows() + itb.row(),
                             ita.col() * b.cols() + itb.col(), va * itb.value());
        }
      }
    }
  }
}

void append_jump_terms(std::vector<Triplet>& trips, const std::vector<WeightedJump>& jumps,
                       const SparseMatrix& identity) {
  for (const auto& j : jumps) {
    const SparseMatrix a_conj = j.op.conjugate();
    SparseMatrix ada = (SparseMatrix(j.op.adjoint()) * j.op).pruned();
    const SparseMatrix ada_t = SparseMatrix(ada.transpose());
    append_kron(trips, a_conj, j.op, Complex(j.rate));
    append_kron(trips, identity, ada, Complex(-0.5 * j.rate));
    append_kron(trips, ada_t, identity, Complex(-0.5 * j.rate));
  }
}

}  // namespace

SparseMatrix assemble_liouvillian(const SparseMatrix& hamiltonian,
                                  const std::vector<WeightedJump>& jumps) {
  const auto dim = hamiltonian.rows();
  if (dim != hamiltonian.cols()) throw ShapeError("assemble_liouvillian: H must be square");
  SparseMatrix identity(dim, dim);
  identity.setIdentity();

  std::vector<Triplet> trips;
  const SparseMatrix h_t = SparseMatrix(hamiltonian.transpose());
  append_kron(trips, identity, hamiltonian, Complex(0.0, -1.0));
  append_kron(trips, h_t, identity, Complex(0.0, 1.0));
  append_jump_terms(trips, jumps, identity);

  SparseMatrix liou(dim * dim, dim * dim);
  liou.setFromTriplets(trips.begin(), trips.end());
  liou.prune([](Eigen::Index, Eigen::Index, const Complex& v) { return v != Complex(0.0); });
  liou.makeCompressed();
  return liou;
}

SparseMatrix assemble_liouvillian(const ChainSpec& spec) {
  return assemble_liouvillian(build_hamiltonian(spec), build_jump_operators(spec));
}

SparseMatrix dissipator_superoperator(const std::vector<WeightedJump>& jumps, int dim) {
  SparseMatrix identity(dim, dim);
  identity.setIdentity();
  std::vector<Triplet> trips;
  append_jump_terms(trips, jumps, identity);
  SparseMatrix out(static_cast<Eigen::Index>(dim) * dim, static_cast<Eigen::Index>(dim) * dim);
  out.setFromTriplets(trips.begin(), trips.end());
  out.makeCompressed();
  return out;
}

DenseMatrix apply_liouvillian(const SparseMatrix& liouvillian, const DenseMatrix& rho) {
  if (rho.rows() != rho.cols() || rho.size() != liouvillian.cols()) {
    throw ShapeError("apply_liouvillian: dimension mismatch");
  }
  return devectorize(liouvillian * vectorize(rho));
}

DenseMatrix apply_dissipator(const std::vector<WeightedJump>& jumps, const DenseMatrix& rho) {
  DenseMatrix out = DenseMatrix::Zero(rho.rows(), rho.cols());
  for (const auto& j : jumps) {
    if (j.op.rows() != rho.rows()) throw ShapeError("apply_dissipator: dimension mismatch");
    const SparseMatrix a_dag = SparseMatrix(j.op.adjoint());
    const SparseMatrix ada = (a_dag * j.op).pruned();
    const DenseMatrix a_rho = j.op * rho;
    out += j.rate * (DenseMatrix(a_rho * a_dag) -
                     0.5 * (DenseMatrix(ada * rho) + DenseMatrix(rho * ada)));
  }
  return out;
}

void dump_triplets(const SparseMatrix& m, std::ostream& out) {
  const auto saved = out.precision(std::numeric_limits<double>::max_digits10);
  out << m.rows() << ' ' << m.cols() << ' ' << m.nonZeros() << '\n';
  for (int k = 0; k < m.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(m, k); it; ++it) {
      out << it.row() << ' ' << it.col() << ' ' << it.value().real() << ' '
          << it.value().imag() << '\n';
    }
  }
  out.precision(saved);
}

}  // namespace heatchain
