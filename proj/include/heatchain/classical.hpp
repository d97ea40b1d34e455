#pragma once

#include "heatchain/chain_spec.hpp"
#include "heatchain/types.hpp"

namespace heatchain {

/// Symmetric exclusion chain with thermal boundary rates. The baths reuse
/// BathSpec; their derived (gamma, s) pairs mean the same as in the quantum
/// model. omega is the two-level splitting used both for temperature-mode
/// occupations and for converting the excitation current to energy units.
struct ClassicalChainSpec {
  int n_sites = 2;
  double hop_rate = 1.0;  // V
  double omega = 1.0;
  BathSpec bath_left;
  BathSpec bath_right;

  void validate() const;
  BathRates left_rates() const { return bath_derived_quantities(bath_left, omega); }
  BathRates right_rates() const { return bath_derived_quantities(bath_right, omega); }
};

/// Stationary occupation probabilities P_k of the rate equations:
///   site 1:     gamma_1 s_1 - P_1 (gamma_1 + V) + V P_2 = 0
///   inner k:    V (P_{k-1} - 2 P_k + P_{k+1}) = 0
///   site N:     gamma_N s_N - P_N (gamma_N + V) + V P_{N-1} = 0
/// so the interior profile is affine in k.
struct OccupationProfile {
  RealVector p;
};

OccupationProfile solve_classical_steady_state(const ClassicalChainSpec& spec);

/// Excitation current V (P_bond - P_bond+1) across the given bond
/// (1-based; every bond carries the same value in the steady state).
/// Multiply by omega for energy units.
double classical_current(const OccupationProfile& profile, const ClassicalChainSpec& spec,
                         int bond = 1);

/// Closed-form stationary current
///   gamma_1 gamma_N V (s_1 - s_N) / (V (gamma_1 + gamma_N) + gamma_1 gamma_N (N - 1)),
/// which scales as V (s_1 - s_N) / N for long chains.
double classical_current_analytic(const ClassicalChainSpec& spec);

}  // namespace heatchain
