#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "heatchain/chain_spec.hpp"
#include "heatchain/entanglement.hpp"
#include "heatchain/steady_state.hpp"
#include "heatchain/types.hpp"

namespace heatchain {

/// One experiment description. Which fields matter depends on kind; the
/// validate() overloads of the run_* functions reject missing pieces.
/// All outputs embed the plan parameters and seed as '#' header comments
/// and are byte-identical for identical plans.
struct SweepPlan {
  enum class Kind { Size, Temperature, Dephasing, Disorder, EntanglementRegion };

  Kind kind = Kind::Size;
  ChainSpec base;                        // quantum reference chain
  std::vector<int> quantum_sizes;        // N values for quantum solves
  std::vector<int> classical_sizes;      // N values for the exclusion chain
  std::vector<double> dephasing_rates;   // gamma values (one curve each)
  std::vector<double> temperatures;      // T_1 values (temperature sweep)
  bool include_classical = true;
  double hop_rate = 1.0;                 // classical V
  int sample_count = 1000;               // disorder
  std::uint64_t seed = 0;                // disorder; recorded in all outputs
  double disorder_dephasing = 1.0;       // gamma applied to the dephased twin
  int disorder_sites = 5;
  EntanglementScanOptions scan;
  SolverOptions solver;
};

struct SweepRow {
  std::string model;  // "quantum" | "classical"
  int n_sites = 0;
  double gamma = 0.0;
  double t_left = 0.0;
  double current = 0.0;   // NaN when the solver failed
  std::string error;      // empty on success
};

struct DisorderSample {
  std::vector<double> site_energies;
  std::vector<double> couplings;
  double current_plain = 0.0;     // gamma = 0
  double current_dephased = 0.0;  // gamma = plan.disorder_dephasing
  bool reduced = false;           // dephasing lowered the current
};

struct DisorderSummary {
  int sample_count = 0;
  std::uint64_t seed = 0;
  double dephasing = 0.0;
  int reduced_count = 0;
  double fraction_reduced = 0.0;
  double mean_plain = 0.0;
  // mean undephased current over samples where dephasing helped;
  // NaN when dephasing helped nowhere
  double mean_plain_over_helped = 0.0;
  bool conditional_below_average = false;
  int redraw_count = 0;
  std::vector<DisorderSample> samples;
};

/// J(N) rows for quantum curves (one per dephasing rate) and the classical
/// chain. Solver failures land in the row's error column; the sweep
/// continues. CSV schema: model,N,gamma,J.
std::vector<SweepRow> run_size_sweep(const SweepPlan& plan, std::ostream& csv);

/// J(T_1) rows with T_N fixed by the base spec. Requires temperature-mode
/// baths. CSV schema: model,N,gamma,T1,J.
std::vector<SweepRow> run_temperature_sweep(const SweepPlan& plan, std::ostream& csv);

/// J(gamma) rows at fixed sizes. CSV schema: model,N,gamma,J.
std::vector<SweepRow> run_dephasing_sweep(const SweepPlan& plan, std::ostream& csv);

/// Random chains (site energies and couplings uniform on [0,1]) solved with
/// and without dephasing. Per-sample rows carry the full draw. Sample i uses
/// its own generator seeded from (plan.seed, i), so the ensemble is
/// reproducible and order-independent. Samples drawing an exact zero are
/// redrawn and counted.
DisorderSummary run_disorder_ensemble(const SweepPlan& plan, std::ostream& csv);

/// Fig-4-style region map over (s1, sN). CSV schema:
/// s1,sN,entangled,max_negativity,best_g,best_gamma.
EntanglementRegion run_entanglement_region(const SweepPlan& plan, std::ostream& csv);

enum class PlotKind { LogLog, Linear, Region };

/// Writes a self-contained Python/matplotlib script that renders the given
/// CSV: log-log J(N), linear J(T1), or an (s1, sN) region map. The script
/// saves <csv>.png and needs only the Python standard library + matplotlib.
void emit_plot_script(const std::string& csv_path, PlotKind kind, std::ostream& out);

PlotKind plot_kind_for(SweepPlan::Kind kind);

/// Runs fn(0..count-1) on a small thread pool; results must be written to
/// per-index slots, which keeps outputs deterministic regardless of
/// scheduling. Exceptions propagate after all workers finish.
void parallel_for_indexed(std::size_t count, const std::function<void(std::size_t)>& fn);

/// Stable formatting used by every CSV writer: shortest round-trip decimal.
std::string format_double(double value);

}  // namespace heatchain
