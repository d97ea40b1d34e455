#pragma once

#include <utility>
#include <vector>

#include "heatchain/types.hpp"

namespace heatchain {

/// Result of fitting J = prefactor * N^(alpha - 1) by least squares on
/// (ln N, ln J). alpha = 1 means size-independent (ballistic) current,
/// alpha = 0 the diffusive 1/N law. r is the Pearson correlation of the
/// log-log data; by convention r = 1 when the ln J values are identical
/// (the fit is exact with zero slope).
struct PowerLawFit {
  double alpha = 0.0;
  double prefactor = 0.0;
  double r = 0.0;

  double slope() const { return alpha - 1.0; }
  double r_squared() const { return r * r; }
};

/// points: (N, J) with N >= 2 and J > 0; needs at least three points.
/// Throws SpecError on non-positive J or N < 2, InsufficientDataError on
/// fewer than three points.
PowerLawFit fit_power_law(const std::vector<std::pair<double, double>>& points);

}  // namespace heatchain
