#pragma once

#include <vector>

#include "heatchain/chain_spec.hpp"
#include "heatchain/types.hpp"

namespace heatchain {

// Basis convention, fixed project-wide and pinned by tests:
//   - tensor ordering is site 1 (x) site 2 (x) ... (x) site N (site-1-major),
//   - within a site, index 0 = excited |e>, index 1 = ground |g>.
// A computational basis index b therefore reads as N bits, most significant
// bit = site 1, bit value 0 meaning excited. For N = 2 the order is
// |ee>, |eg>, |ge>, |gg>.

/// 2x2 single-site operators in the (excited, ground) basis.
DenseMatrix sigma_z();
DenseMatrix sigma_plus();
DenseMatrix sigma_minus();
DenseMatrix excited_projector();  // sigma^+ sigma^-

/// Kronecker product of sparse operators (row-major bit layout as above).
SparseMatrix kronecker(const SparseMatrix& a, const SparseMatrix& b);

/// Embeds a single-site operator at `site` (0-based) into the N-site space.
SparseMatrix site_operator(const DenseMatrix& op, int site, int n_sites);

/// Two-site product op_a(site a) * op_b(site b), a != b.
SparseMatrix two_site_operator(const DenseMatrix& op_a, int site_a,
                               const DenseMatrix& op_b, int site_b, int n_sites);

/// H = sum_k (omega_k/2) sigma_k^z
///   + sum_k g_k (sigma_k^+ sigma_{k+1}^- + sigma_k^- sigma_{k+1}^+).
/// Hermitian; commutes with the total excitation number.
SparseMatrix build_hamiltonian(const ChainSpec& spec);

/// Total excitation number sum_k sigma_k^+ sigma_k^-.
SparseMatrix total_excitation_number(int n_sites);

enum class JumpKind { BathLeftEmission, BathLeftAbsorption,
                      BathRightEmission, BathRightAbsorption,
                      Dephasing };

struct WeightedJump {
  SparseMatrix op;
  double rate;  // strictly positive; zero-rate jumps are omitted
  JumpKind kind;
};

/// The weighted jump set of the master equation:
///   (sigma_1^-, Gamma_1 (n_1+1)), (sigma_1^+, Gamma_1 n_1) and the mirror
///   pair at site N, plus one dephasing projector (sigma_k^+ sigma_k^-, gamma)
///   per site when gamma > 0. Jumps with zero rate never appear.
std::vector<WeightedJump> build_jump_operators(const ChainSpec& spec);

inline bool is_left_bath(JumpKind k) {
  return k == JumpKind::BathLeftEmission || k == JumpKind::BathLeftAbsorption;
}
inline bool is_right_bath(JumpKind k) {
  return k == JumpKind::BathRightEmission || k == JumpKind::BathRightAbsorption;
}

}  // namespace heatchain
