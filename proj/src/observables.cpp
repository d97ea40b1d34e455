#include "heatchain/observables.hpp"

#include <cmath>

#include "heatchain/liouvillian.hpp"
#include "heatchain/operators.hpp"

namespace heatchain {

namespace {

void check_state_dim(const DenseMatrix& rho, const ChainSpec& spec) {
  if (rho.rows() != spec.dimension() || rho.cols() != spec.dimension())
    throw ShapeError("state dimension does not match the chain spec");
}

double energy_flux(const DenseMatrix& rho, const ChainSpec& spec,
                   const std::vector<WeightedJump>& jumps) {
  if (jumps.empty()) return 0.0;
  const SparseMatrix h = build_hamiltonian(spec);
  const DenseMatrix d = apply_dissipator(jumps, rho);
  Complex tr(0.0, 0.0);
  for (int k = 0; k < h.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(h, k); it; ++it)
      tr += it.value() * d(it.col(), it.row());
  return tr.real();
}

}  // namespace

double bath_current(const DenseMatrix& rho, const ChainSpec& spec, BathSide side) {
  check_state_dim(rho, spec);
  std::vector<WeightedJump> selected;
  for (const auto& j : build_jump_operators(spec)) {
    const bool left = is_left_bath(j.kind), right = is_right_bath(j.kind);
    if ((side == BathSide::Left && left) || (side == BathSide::Right && right))
      selected.push_back(j);
  }
  return energy_flux(rho, spec, selected);
}

double dephasing_power(const DenseMatrix& rho, const ChainSpec& spec) {
  check_state_dim(rho, spec);
  std::vector<WeightedJump> selected;
  for (const auto& j : build_jump_operators(spec))
    if (j.kind == JumpKind::Dephasing) selected.push_back(j);
  return energy_flux(rho, spec, selected);
}

double heat_current_structural(const DenseMatrix& rho, const ChainSpec& spec,
                               BathSide side) {
  check_state_dim(rho, spec);
  if (!spec.has_uniform_energy())
    throw UnsupportedFormulaError(
        "structural current formula requires uniform on-site energies");
  const double omega = spec.site_energies[0];
  const int n = spec.n_sites;
  const int site = side == BathSide::Left ? 0 : n - 1;
  const BathRates rates = side == BathSide::Left ? spec.left_rates() : spec.right_rates();

  const SparseMatrix proj = site_operator(excited_projector(), site, n);
  const double pop = expectation(rho, proj).real();
  double coherence_term = 0.0;
  if (n >= 2) {
    const int partner = side == BathSide::Left ? 1 : n - 2;
    const double g = spec.couplings[side == BathSide::Left ? 0 : n - 2];
    const SparseMatrix op = two_site_operator(sigma_plus(), std::min(site, partner),
                                              sigma_minus(), std::max(site, partner), n);
    coherence_term = g * expectation(rho, op).real();  // (g/2)(z + conj z)
  }
  return rates.gamma * (omega * (rates.s - pop) - coherence_term);
}

double heat_current_analytic(const ChainSpec& spec) {
  spec.validate();
  if (spec.n_sites < 2)
    throw UnsupportedFormulaError("closed-form current needs at least one bond");
  if (!spec.has_uniform_energy() || !spec.has_uniform_coupling())
    throw UnsupportedFormulaError("closed-form current requires a uniform chain");
  if (spec.dephasing_rate != 0.0)
    throw UnsupportedFormulaError("closed-form current is only proven without dephasing");
  const double omega = spec.site_energies[0];
  const double g = spec.couplings[0];
  const BathRates lhs = spec.left_rates(), rhs = spec.right_rates();
  const double g2 = 4.0 * g * g;
  const double delta = g2 * lhs.gamma * rhs.gamma * (lhs.s - rhs.s) /
                       ((lhs.gamma + rhs.gamma) * (g2 + lhs.gamma * rhs.gamma));
  return omega * delta;
}

Complex expectation(const DenseMatrix& rho, const SparseMatrix& op) {
  if (rho.rows() != op.rows() || rho.cols() != op.cols())
    throw ShapeError("operator and state dimensions differ");
  Complex tr(0.0, 0.0);
  for (int k = 0; k < op.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(op, k); it; ++it)
      tr += it.value() * rho(it.col(), it.row());
  return tr;
}

SteadyStateReport extract_observables(const DenseMatrix& rho, const ChainSpec& spec) {
  check_state_dim(rho, spec);
  SteadyStateReport report;
  report.current_left = bath_current(rho, spec, BathSide::Left);
  report.current_right = bath_current(rho, spec, BathSide::Right);
  report.dephasing_power = dephasing_power(rho, spec);
  report.heat_current = report.current_left;

  const int n = spec.n_sites;
  report.populations.resize(n);
  for (int site = 0; site < n; ++site) {
    const SparseMatrix proj = site_operator(excited_projector(), site, n);
    report.populations(site) = expectation(rho, proj).real();
  }
  report.bond_coherences.resize(n - 1);
  for (int site = 0; site + 1 < n; ++site) {
    const SparseMatrix op =
        two_site_operator(sigma_plus(), site, sigma_minus(), site + 1, n);
    report.bond_coherences[site] = expectation(rho, op);
  }
  if (n >= 2) {
    const Complex z = report.bond_coherences[0];
    report.delta = (Complex(0.0, 1.0) * spec.couplings[0] * (z - std::conj(z))).real();
  }
  return report;
}

}  // namespace heatchain
