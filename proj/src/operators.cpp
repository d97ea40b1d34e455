#include "heatchain/operators.hpp"

namespace heatchain {

DenseMatrix sigma_z() {
  DenseMatrix m = DenseMatrix::Zero(2, 2);
  m(0, 0) = 1.0;
  m(1, 1) = -1.0;
  return m;
}

DenseMatrix sigma_plus() {
  // |e><g| : column index 1 (ground) maps to row index 0 (excited)
  DenseMatrix m = DenseMatrix::Zero(2, 2);
  m(0, 1) = 1.0;
  return m;
}

DenseMatrix sigma_minus() {
  DenseMatrix m = DenseMatrix::Zero(2, 2);
  m(1, 0) = 1.0;
  return m;
}

DenseMatrix excited_projector() {
  DenseMatrix m = DenseMatrix::Zero(2, 2);
  m(0, 0) = 1.0;
  return m;
}

SparseMatrix kronecker(const SparseMatrix& a, const SparseMatrix& b) {
  SparseMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  std::vector<Triplet> trips;
  trips.reserve(static_cast<std::size_t>(a.nonZeros()) * static_cast<std::size_t>(b.nonZeros()));
  for (int ka = 0; ka < a.outerSize(); ++ka) {
    for (SparseMatrix::InnerIterator ita(a, ka); ita; ++ita) {
      for (int kb = 0; kb < b.outerSize(); ++kb) {
        for (SparseMatrix::InnerIterator itb(b, kb); itb; ++itb) {
          trips.emplace_back(ita.row() * b.rows() + itb.row(),
                             ita.col() * b.cols() + itb.col(),
                             ita.value() * itb.value());
        }
      }
    }
  }
  out.setFromTriplets(trips.begin(), trips.end());
  return out;
}

SparseMatrix site_operator(const DenseMatrix& op, int site, int n_sites) {
  if (site < 0 || site >= n_sites) throw ShapeError("site_operator: site out of range");
  const int dim = 1 << n_sites;
  const int shift = n_sites - 1 - site;  // site 1 is the most significant bit
  std::vector<Triplet> trips;
  trips.reserve(static_cast<std::size_t>(dim) * 2);
  for (int c = 0; c < dim; ++c) {
    const int b = (c >> shift) & 1;
    for (int r2 = 0; r2 < 2; ++r2) {
      const Complex v = op(r2, b);
      if (v == Complex(0.0)) continue;
      const int r = (c & ~(1 << shift)) | (r2 << shift);
      trips.emplace_back(r, c, v);
    }
  }
  SparseMatrix out(dim, dim);
  out.setFromTriplets(trips.begin(), trips.end());
  return out;
}

SparseMatrix two_site_operator(const DenseMatrix& op_a, int site_a,
                               const DenseMatrix& op_b, int site_b, int n_sites) {
  if (site_a == site_b || site_a < 0 || site_b < 0 || site_a >= n_sites ||
      site_b >= n_sites) {
    throw ShapeError("two_site_operator: invalid site indices");
  }
  const int dim = 1 << n_sites;
  // Single pass over basis states: entry (r', c) for each basis state c whose
  // site_a/site_b bits are hit by the respective 2x2 operators.
  std::vector<Triplet> trips;
  trips.reserve(static_cast<std::size_t>(dim) * 4);
  const int shift_a = n_sites - 1 - site_a;  // site 1 is the most significant bit
  const int shift_b = n_sites - 1 - site_b;
  for (int c = 0; c < dim; ++c) {
    const int ba = (c >> shift_a) & 1;
    const int bb = (c >> shift_b) & 1;
    for (int ra = 0; ra < 2; ++ra) {
      const Complex va = op_a(ra, ba);
      if (va == Complex(0.0)) continue;
      for (int rb = 0; rb < 2; ++rb) {
        const Complex vb = op_b(rb, bb);
        if (vb == Complex(0.0)) continue;
        int r = c & ~(1 << shift_a) & ~(1 << shift_b);
        r |= ra << shift_a;
        r |= rb << shift_b;
        trips.emplace_back(r, c, va * vb);
      }
    }
  }
  SparseMatrix out(dim, dim);
  out.setFromTriplets(trips.begin(), trips.end());
  return out;
}

SparseMatrix build_hamiltonian(const ChainSpec& spec) {
  spec.validate();
  const int n = spec.n_sites;
  const int dim = spec.dimension();
  // Diagonal part plus one flip-flop entry pair per bond; assembled directly
  // from basis-state bits rather than by summing Kronecker factors.
  std::vector<Triplet> trips;
  for (int c = 0; c < dim; ++c) {
    double diag = 0.0;
    for (int k = 0; k < n; ++k) {
      const int bit = (c >> (n - 1 - k)) & 1;  // 0 = excited
      diag += 0.5 * spec.site_energies[static_cast<std::size_t>(k)] * (bit == 0 ? 1.0 : -1.0);
    }
    if (diag != 0.0) trips.emplace_back(c, c, Complex(diag));
    for (int k = 0; k + 1 < n; ++k) {
      const int sa = n - 1 - k;
      const int sb = n - 2 - k;
      const int ba = (c >> sa) & 1;
      const int bb = (c >> sb) & 1;
      // sigma_k^+ sigma_{k+1}^-: site k gains the excitation site k+1 loses,
      // i.e. bits (ba, bb) = (1, 0) -> (0, 1); plus the Hermitian mirror.
      if (ba != bb) {
        const int r = c ^ (1 << sa) ^ (1 << sb);
        const double g = spec.couplings[static_cast<std::size_t>(k)];
        if (g != 0.0) trips.emplace_back(r, c, Complex(g));
      }
    }
  }
  SparseMatrix h(dim, dim);
  h.setFromTriplets(trips.begin(), trips.end());
  return h;
}

SparseMatrix total_excitation_number(int n_sites) {
  const int dim = 1 << n_sites;
  std::vector<Triplet> trips;
  trips.reserve(static_cast<std::size_t>(dim));
  for (int c = 0; c < dim; ++c) {
    int excited = 0;
    for (int k = 0; k < n_sites; ++k) {
      if (((c >> k) & 1) == 0) ++excited;
    }
    if (excited > 0) trips.emplace_back(c, c, Complex(excited));
  }
  SparseMatrix out(dim, dim);
  out.setFromTriplets(trips.begin(), trips.end());
  return out;
}

std::vector<WeightedJump> build_jump_operators(const ChainSpec& spec) {
  spec.validate();
  const int n = spec.n_sites;
  std::vector<WeightedJump> jumps;

  const BathRates left = spec.left_rates();
  const BathRates right = spec.right_rates();
  const double gl = spec.bath_left.interaction_rate;
  const double gr = spec.bath_right.interaction_rate;

  jumps.push_back({site_operator(sigma_minus(), 0, n), gl * (left.occupation + 1.0),
                   JumpKind::BathLeftEmission});
  if (left.occupation > 0.0) {
    jumps.push_back({site_operator(sigma_plus(), 0, n), gl * left.occupation,
                     JumpKind::BathLeftAbsorption});
  }
  jumps.push_back({site_operator(sigma_minus(), n - 1, n), gr * (right.occupation + 1.0),
                   JumpKind::BathRightEmission});
  if (right.occupation > 0.0) {
    jumps.push_back({site_operator(sigma_plus(), n - 1, n), gr * right.occupation,
                     JumpKind::BathRightAbsorption});
  }
  if (spec.dephasing_rate > 0.0) {
    for (int k = 0; k < n; ++k) {
      jumps.push_back({site_operator(excited_projector(), k, n), spec.dephasing_rate,
                       JumpKind::Dephasing});
    }
  }
  return jumps;
}

}  // namespace heatchain
