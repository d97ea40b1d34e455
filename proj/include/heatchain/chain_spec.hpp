#pragma once

#include <vector>

#include "heatchain/types.hpp"

namespace heatchain {

// Units: hbar = k_B = 1 throughout. Site energies are given as omega (the
// level splitting), temperatures in the same energy units, rates in inverse
// time units of omega.

/// Bose-Einstein mean occupation 1/(exp(omega/T) - 1) of a reservoir mode at
/// the resonance frequency omega. Returns exactly 0 at T = 0.
double thermal_occupation(double omega, double temperature);

/// One thermal reservoir attached to a terminal site. The temperature/occupation
/// duality: either entry is accepted and both resolve to the mean occupation n
/// once the resonance frequency of the attached site is known.
struct BathSpec {
  enum class Entry { Temperature, Occupation };

  double interaction_rate = 1.0;  // Gamma > 0
  Entry entry = Entry::Temperature;
  double value = 0.0;  // T >= 0 or n >= 0 depending on entry

  static BathSpec from_temperature(double gamma_rate, double temperature);
  static BathSpec from_occupation(double gamma_rate, double occupation);

  /// Mean occupation at resonance frequency omega (canonical form of `value`).
  double occupation(double omega) const;

  void validate() const;
};

/// Derived bath quantities: effective coupling gamma = Gamma(2n+1) and
/// single-site equilibrium excited population s = n/(2n+1).
struct BathRates {
  double occupation;  // n
  double gamma;       // Gamma (2n+1)
  double s;           // n / (2n+1), in [0, 1/2)
};

BathRates bath_derived_quantities(const BathSpec& bath, double omega);

/// Full physical description of a boundary-driven chain of two-level systems.
struct ChainSpec {
  int n_sites = 2;
  std::vector<double> site_energies;  // omega_k, size N
  std::vector<double> couplings;      // g_k between sites k and k+1, size N-1
  BathSpec bath_left;                 // attached to site 1
  BathSpec bath_right;                // attached to site N
  double dephasing_rate = 0.0;        // gamma >= 0, 0 disables dephasing

  /// Uniform chain omega_k = omega, g_k = g.
  static ChainSpec uniform(int n_sites, double omega, double coupling,
                           BathSpec left, BathSpec right, double dephasing = 0.0);

  void validate() const;  // throws SpecError

  int dimension() const;  // 2^N
  bool has_uniform_energy() const;
  bool has_uniform_coupling() const;

  /// Bath quantities resolved at the attached terminal site's energy.
  BathRates left_rates() const;
  BathRates right_rates() const;
};

}  // namespace heatchain
