#pragma once

#include <vector>

#include "heatchain/chain_spec.hpp"
#include "heatchain/types.hpp"

namespace heatchain {

enum class BathSide { Left, Right };

/// Everything the sweeps and tests read off a steady state.
/// Currents are signed: positive means energy flows from the bath into the
/// chain, so in a hot-left configuration current_left > 0 > current_right.
/// heat_current is the signed left-bath current (the magnitude convention
/// |J| is recoverable; signed values compose in sweeps).
struct SteadyStateReport {
  double current_left = 0.0;
  double current_right = 0.0;
  // Energy per time injected by the dephasing channel, Tr(H D_deph rho).
  // Exactly zero for uniform chains or gamma = 0; for disordered dephased
  // chains the balance reads current_left + current_right + dephasing_power = 0.
  double dephasing_power = 0.0;
  double heat_current = 0.0;
  RealVector populations;                 // excited-state population per site
  std::vector<Complex> bond_coherences;   // <sigma_k^+ sigma_{k+1}^-> per bond
  double delta = 0.0;                     // terminal population shift, omega*delta = J_Q
};

/// Tr(H D_side rho) where D_side is the dissipator of that bath's jump
/// operators. Defined pointwise for any state, not only steady states.
double bath_current(const DenseMatrix& rho, const ChainSpec& spec, BathSide side);

/// Tr(H D_deph rho) over all dephasing jumps; 0 when dephasing_rate = 0.
double dephasing_power(const DenseMatrix& rho, const ChainSpec& spec);

/// Closed-form current through a terminal site, evaluated from the state's
/// populations and coherences:
///   left:  gamma_1 [ omega (s_1 - p_1) - (g_1/2) (z_1 + conj z_1) ]
/// and the mirror expression at site N. Requires uniform on-site energies
/// (the derivation assumes them); throws UnsupportedFormulaError otherwise.
double heat_current_structural(const DenseMatrix& rho, const ChainSpec& spec,
                               BathSide side = BathSide::Left);

/// The closed-form steady-state current omega * Delta,
///   Delta = 4 g^2 gamma_1 gamma_N (s_1 - s_N) / ((gamma_1+gamma_N)(4 g^2 + gamma_1 gamma_N)),
/// valid for uniform omega, uniform g, no dephasing; N-independent.
/// Throws UnsupportedFormulaError outside that family.
double heat_current_analytic(const ChainSpec& spec);

/// Expectation Tr(rho op).
Complex expectation(const DenseMatrix& rho, const SparseMatrix& op);

SteadyStateReport extract_observables(const DenseMatrix& rho, const ChainSpec& spec);

}  // namespace heatchain
