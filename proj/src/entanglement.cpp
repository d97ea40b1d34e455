#include "heatchain/entanglement.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <set>

#include "heatchain/steady_state.hpp"

namespace heatchain {

DenseMatrix partial_transpose(const DenseMatrix& rho, const std::vector<int>& sites,
                              int n_sites) {
  if (n_sites < 1) throw SpecError("n_sites must be positive");
  const Eigen::Index dim = Eigen::Index(1) << n_sites;
  if (rho.rows() != dim || rho.cols() != dim)
    throw ShapeError("state dimension does not match n_sites");
  std::set<int> unique(sites.begin(), sites.end());
  if (unique.size() != sites.size()) throw SpecError("bipartition repeats a site");
  if (sites.empty() || unique.size() == static_cast<std::size_t>(n_sites))
    throw SpecError("bipartition must be a proper non-empty subset of the sites");
  Eigen::Index mask = 0;
  for (int s : sites) {
    if (s < 1 || s > n_sites) throw SpecError("bipartition site out of range");
    mask |= Eigen::Index(1) << (n_sites - s);  // site 1 owns the highest bit
  }
  DenseMatrix out(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r)
    for (Eigen::Index c = 0; c < dim; ++c) {
      // swap the masked bits between row and column index
      const Eigen::Index rr = (r & ~mask) | (c & mask);
      const Eigen::Index cc = (c & ~mask) | (r & mask);
      out(rr, cc) = rho(r, c);
    }
  return out;
}

double negativity(const DenseMatrix& rho, const std::vector<int>& sites, int n_sites) {
  const DenseMatrix pt = partial_transpose(rho, sites, n_sites);
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(DenseMatrix((pt + pt.adjoint()) / 2.0),
                                                Eigen::EigenvaluesOnly);
  double total = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    if (es.eigenvalues()(i) < 0.0) total -= es.eigenvalues()(i);
  return total;
}

double concurrence(const DenseMatrix& rho) {
  if (rho.rows() != 4 || rho.cols() != 4)
    throw ShapeError("concurrence is defined for two-qubit states");
  DenseMatrix yy = DenseMatrix::Zero(4, 4);
  // sigma_y x sigma_y in the product basis
  yy(0, 3) = Complex(-1.0, 0.0);
  yy(1, 2) = Complex(1.0, 0.0);
  yy(2, 1) = Complex(1.0, 0.0);
  yy(3, 0) = Complex(-1.0, 0.0);
  const DenseMatrix flipped = yy * rho.conjugate() * yy;
  Eigen::ComplexEigenSolver<DenseMatrix> es(rho * flipped, false);
  std::array<double, 4> lambda{};
  for (int i = 0; i < 4; ++i)
    lambda[i] = std::sqrt(std::max(0.0, es.eigenvalues()(i).real()));
  std::sort(lambda.begin(), lambda.end(), std::greater<>());
  return std::max(0.0, lambda[0] - lambda[1] - lambda[2] - lambda[3]);
}

EntanglementResult evaluate_entanglement(const DenseMatrix& rho) {
  EntanglementResult result;
  result.negativity = negativity(rho, {2}, 2);
  result.concurrence = concurrence(rho);
  result.entangled = result.negativity > kEntanglementThreshold;
  return result;
}

ChainSpec entanglement_scan_spec(double s1, double s_n, double g, double gamma_eff,
                                 double omega) {
  if (s1 < 0.0 || s1 >= 0.5 || s_n < 0.0 || s_n >= 0.5)
    throw SpecError("asymptotic populations must lie in [0, 1/2)");
  auto bath = [&](double s) {
    return BathSpec::from_occupation(gamma_eff * (1.0 - 2.0 * s), s / (1.0 - 2.0 * s));
  };
  ChainSpec spec = ChainSpec::uniform(2, omega, g, bath(s1), bath(s_n));
  return spec;
}

std::vector<double> EntanglementRegion::boundary() const {
  std::vector<double> edge(s_values.size(), -1.0);
  for (std::size_t i = 0; i < s_values.size(); ++i)
    for (std::size_t j = 0; j < s_values.size(); ++j)
      if (at(static_cast<int>(i), static_cast<int>(j)).entangled)
        edge[i] = s_values[j];
  return edge;
}

namespace {

double cell_negativity(double s1, double s_n, double g, double gamma_eff, double omega) {
  const ChainSpec spec = entanglement_scan_spec(s1, s_n, g, gamma_eff, omega);
  SolverOptions opts;
  opts.method = SolveMethod::DenseNullspace;
  const DenseMatrix rho = solve_steady_state(spec, opts);
  return negativity(rho, {2}, 2);
}

}  // namespace

EntanglementRegion scan_entanglement_region(const EntanglementScanOptions& opts) {
  if (opts.grid_points < 2 || opts.search_points < 2)
    throw SpecError("scan needs at least two grid points per axis");
  if (!(opts.s_max > 0.0) || opts.s_max >= 0.5)
    throw SpecError("s_max must lie in (0, 1/2)");

  EntanglementRegion region;
  region.s_values.resize(opts.grid_points);
  for (int i = 0; i < opts.grid_points; ++i)
    region.s_values[i] = opts.s_max * i / (opts.grid_points - 1);

  std::vector<double> search(opts.search_points);
  const double lmin = std::log10(opts.search_min), lmax = std::log10(opts.search_max);
  for (int i = 0; i < opts.search_points; ++i)
    search[i] = std::pow(10.0, lmin + (lmax - lmin) * i / (opts.search_points - 1));
  const double step = (lmax - lmin) / (opts.search_points - 1);

  region.cells.resize(static_cast<std::size_t>(opts.grid_points) * opts.grid_points);
  for (int i = 0; i < opts.grid_points; ++i) {
    for (int j = 0; j < opts.grid_points; ++j) {
      EntanglementRegionCell cell;
      cell.s1 = region.s_values[i];
      cell.s_n = region.s_values[j];
      for (double g : search)
        for (double gamma : search) {
          const double neg = cell_negativity(cell.s1, cell.s_n, g, gamma,
                                             opts.coupling_omega);
          if (neg > cell.max_negativity) {
            cell.max_negativity = neg;
            cell.best_g = g;
            cell.best_gamma = gamma;
          }
        }
      if (opts.refine && cell.max_negativity > 1e-12) {
        const double lg = std::log10(cell.best_g), lc = std::log10(cell.best_gamma);
        for (int a = -3; a <= 3; ++a)
          for (int b = -3; b <= 3; ++b) {
            const double g = std::pow(10.0, lg + a * step / 3.0);
            const double gamma = std::pow(10.0, lc + b * step / 3.0);
            const double neg = cell_negativity(cell.s1, cell.s_n, g, gamma,
                                               opts.coupling_omega);
            if (neg > cell.max_negativity) {
              cell.max_negativity = neg;
              cell.best_g = g;
              cell.best_gamma = gamma;
            }
          }
      }
      cell.entangled = cell.max_negativity > kEntanglementThreshold;
      region.cells[static_cast<std::size_t>(i) * opts.grid_points + j] = cell;
    }
  }
  return region;
}

}  // namespace heatchain
