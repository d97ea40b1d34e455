#include "heatchain/fitting.hpp"

#include <cmath>

namespace heatchain {

PowerLawFit fit_power_law(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 3)
    throw InsufficientDataError("power-law fit needs at least three points");
  const auto n = static_cast<double>(points.size());
  double sx = 0.0, sy = 0.0;
  for (const auto& [size, current] : points) {
    if (!(size >= 2.0)) throw SpecError("fit sizes must be >= 2");
    if (!(current > 0.0)) throw SpecError("fit currents must be positive");
    sx += std::log(size);
    sy += std::log(current);
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (const auto& [size, current] : points) {
    const double dx = std::log(size) - mx, dy = std::log(current) - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx == 0.0) throw SpecError("fit sizes are all identical");
  const double slope = sxy / sxx;
  PowerLawFit fit;
  fit.alpha = 1.0 + slope;
  fit.prefactor = std::exp(my - slope * mx);
  fit.r = syy == 0.0 ? 1.0 : sxy / std::sqrt(sxx * syy);
  return fit;
}

}  // namespace heatchain
