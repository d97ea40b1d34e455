#pragma once

#include <vector>

#include "heatchain/chain_spec.hpp"
#include "heatchain/types.hpp"

namespace heatchain {

// Below this negativity a state counts as separable-within-tolerance.
inline constexpr double kEntanglementThreshold = 1e-9;

struct EntanglementResult {
  double negativity = 0.0;
  double concurrence = 0.0;  // meaningful for two-qubit states only
  bool entangled = false;    // negativity > kEntanglementThreshold
};

/// Transposes the tensor factors of the listed sites (1-based).
/// The site list must be a proper, duplicate-free subset of 1..n_sites.
DenseMatrix partial_transpose(const DenseMatrix& rho, const std::vector<int>& sites,
                              int n_sites);

/// Sum of |negative eigenvalues| of the partial transpose. Zero iff PPT;
/// for two qubits PPT is exactly separability.
double negativity(const DenseMatrix& rho, const std::vector<int>& sites, int n_sites);

/// Wootters concurrence of a two-qubit state: max(0, l1 - l2 - l3 - l4)
/// with l_i the decreasing square roots of the eigenvalues of
/// rho (sigma_y x sigma_y) conj(rho) (sigma_y x sigma_y).
double concurrence(const DenseMatrix& rho);

/// negativity + concurrence + threshold verdict for an N=2 state.
EntanglementResult evaluate_entanglement(const DenseMatrix& rho);

struct EntanglementScanOptions {
  int grid_points = 13;     // s values linspaced over [0, s_max]
  double s_max = 0.48;
  int search_points = 25;   // per axis of the log grid over (g, gamma_eff)
  double search_min = 1e-2;
  double search_max = 1e2;
  bool refine = true;       // one finer pass around the best coarse hit
  double coupling_omega = 1.0;
};

struct EntanglementRegionCell {
  double s1 = 0.0;
  double s_n = 0.0;
  double max_negativity = 0.0;
  double best_g = 0.0;
  double best_gamma = 0.0;
  bool entangled = false;
};

struct EntanglementRegion {
  std::vector<double> s_values;
  std::vector<EntanglementRegionCell> cells;  // row-major over (s1, s_n)

  const EntanglementRegionCell& at(int i, int j) const {
    return cells[static_cast<std::size_t>(i) * s_values.size() + j];
  }
  /// Boundary estimate: for each s1 grid row, the largest s_n that
  /// entangled (-1 when the row has no entangled cell).
  std::vector<double> boundary() const;
};

/// Maps, for every (s1, sN) cell of the grid, whether any searched
/// (g, gamma_1 = gamma_N) makes the N=2 steady state entangled. Baths are
/// parameterized by their effective rate and asymptotic population:
/// occupation n = s/(1-2s), raw rate Gamma = gamma_eff (1-2s), no dephasing.
EntanglementRegion scan_entanglement_region(const EntanglementScanOptions& opts = {});

/// The N=2 spec used by the scan for one (s1, sN, g, gamma_eff) point.
ChainSpec entanglement_scan_spec(double s1, double s_n, double g, double gamma_eff,
                                 double omega = 1.0);

}  // namespace heatchain
