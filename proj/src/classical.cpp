#include "heatchain/classical.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace heatchain {

void ClassicalChainSpec::validate() const {
  if (n_sites < 2) throw SpecError("classical chain needs at least two sites");
  if (!(hop_rate > 0.0) || !std::isfinite(hop_rate))
    throw SpecError("hop rate must be positive and finite");
  if (!(omega > 0.0) || !std::isfinite(omega))
    throw SpecError("site energy must be positive and finite");
  bath_left.validate();
  bath_right.validate();
}

OccupationProfile solve_classical_steady_state(const ClassicalChainSpec& spec) {
  spec.validate();
  const int n = spec.n_sites;
  const double v = spec.hop_rate;
  const BathRates lhs = spec.left_rates(), rhs = spec.right_rates();

  // Thomas algorithm on the tridiagonal stationarity system.
  std::vector<double> diag(n, -2.0 * v), upper(n - 1, v), lower(n - 1, v), b(n, 0.0);
  diag[0] = -(lhs.gamma + v);
  b[0] = -lhs.gamma * lhs.s;
  diag[n - 1] = -(rhs.gamma + v);
  b[n - 1] = -rhs.gamma * rhs.s;

  for (int i = 1; i < n; ++i) {
    const double w = lower[i - 1] / diag[i - 1];
    diag[i] -= w * upper[i - 1];
    b[i] -= w * b[i - 1];
    if (diag[i] == 0.0) throw ConvergenceError("singular classical rate system", 0.0);
  }
  OccupationProfile profile;
  profile.p.resize(n);
  profile.p(n - 1) = b[n - 1] / diag[n - 1];
  for (int i = n - 2; i >= 0; --i)
    profile.p(i) = (b[i] - upper[i] * profile.p(i + 1)) / diag[i];
  return profile;
}

double classical_current(const OccupationProfile& profile, const ClassicalChainSpec& spec,
                         int bond) {
  if (profile.p.size() != spec.n_sites)
    throw ShapeError("profile length does not match the chain spec");
  if (bond < 1 || bond >= spec.n_sites)
    throw SpecError("bond index out of range: " + std::to_string(bond));
  return spec.hop_rate * (profile.p(bond - 1) - profile.p(bond));
}

double classical_current_analytic(const ClassicalChainSpec& spec) {
  spec.validate();
  const double v = spec.hop_rate;
  const BathRates lhs = spec.left_rates(), rhs = spec.right_rates();
  const double gg = lhs.gamma * rhs.gamma;
  return gg * v * (lhs.s - rhs.s) / (v * (lhs.gamma + rhs.gamma) + gg * (spec.n_sites - 1));
}

}  // namespace heatchain
