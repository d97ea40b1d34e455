// Command-line driver: steady-state solves, sweeps, the disorder ensemble,
// the entanglement region scan, and power-law fits, with CSV + plot-script
// output. Physics parameters are never defaulted silently; the only
// defaults are documented survey ranges.
#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "heatchain/classical.hpp"
#include "heatchain/experiments.hpp"
#include "heatchain/fitting.hpp"
#include "heatchain/liouvillian.hpp"
#include "heatchain/observables.hpp"
#include "heatchain/steady_state.hpp"

namespace {

using namespace heatchain;

struct BathOptions {
  double gamma_left = 0.0, gamma_right = 0.0;
  double t_left = 0.0, t_right = 0.0;
  double occ_left = 0.0, occ_right = 0.0;
  CLI::Option* t_left_opt = nullptr;
  CLI::Option* t_right_opt = nullptr;
  CLI::Option* occ_left_opt = nullptr;
  CLI::Option* occ_right_opt = nullptr;

  void attach(CLI::App& cmd, bool with_left_temperature = true) {
    cmd.add_option("--Gamma-left", gamma_left, "left bath raw coupling rate Gamma_1")
        ->required();
    cmd.add_option("--Gamma-right", gamma_right, "right bath raw coupling rate Gamma_N")
        ->required();
    if (with_left_temperature) {
      t_left_opt = cmd.add_option("--T-left", t_left, "left bath temperature");
      occ_left_opt = cmd.add_option("--n-left", occ_left, "left bath occupation n_1");
      t_left_opt->excludes(occ_left_opt);
      occ_left_opt->excludes(t_left_opt);
    }
    t_right_opt = cmd.add_option("--T-right", t_right, "right bath temperature");
    occ_right_opt = cmd.add_option("--n-right", occ_right, "right bath occupation n_N");
    t_right_opt->excludes(occ_right_opt);
    occ_right_opt->excludes(t_right_opt);
  }

  static BathSpec pick(const CLI::Option* t_opt, double t, const CLI::Option* n_opt,
                       double n, double gamma, const char* side) {
    if (t_opt && t_opt->count()) return BathSpec::from_temperature(gamma, t);
    if (n_opt && n_opt->count()) return BathSpec::from_occupation(gamma, n);
    throw SpecError(std::string("specify --T-") + side + " or --n-" + side);
  }
  BathSpec left() const {
    return pick(t_left_opt, t_left, occ_left_opt, occ_left, gamma_left, "left");
  }
  BathSpec right() const {
    return pick(t_right_opt, t_right, occ_right_opt, occ_right, gamma_right, "right");
  }
};

struct SolverCliOptions {
  std::string method = "auto";
  double tolerance = 1e-12;

  void attach(CLI::App& cmd) {
    cmd.add_option("--solver", method, "steady-state method")
        ->check(CLI::IsMember({"auto", "dense", "sparse"}))
        ->capture_default_str();
    cmd.add_option("--residual-tolerance", tolerance, "relative steady-state residual")
        ->capture_default_str();
  }
  SolverOptions options() const {
    SolverOptions opts;
    opts.residual_tolerance = tolerance;
    if (method == "dense") opts.method = SolveMethod::DenseNullspace;
    if (method == "sparse") opts.method = SolveMethod::SparseShiftedIteration;
    return opts;
  }
};

std::filesystem::path prepare_output(const std::string& dir, const std::string& name) {
  std::filesystem::create_directories(dir);
  return std::filesystem::path(dir) / name;
}

void write_plot_script(const std::filesystem::path& csv, PlotKind kind) {
  const std::filesystem::path script = csv.string() + ".plot.py";
  std::ofstream out(script);
  emit_plot_script(csv.string(), kind, out);
  std::cout << "wrote " << script.string() << "\n";
}

void report_rows(const std::vector<SweepRow>& rows) {
  int failed = 0;
  for (const auto& row : rows)
    if (!row.error.empty()) ++failed;
  std::cout << rows.size() << " rows";
  if (failed) std::cout << " (" << failed << " failed; see the error column)";
  std::cout << "\n";
}

std::vector<std::pair<double, double>> read_fit_points(const std::string& path,
                                                       const std::string& model,
                                                       std::optional<double> gamma,
                                                       int n_min, int n_max) {
  std::ifstream in(path);
  if (!in) throw SpecError("cannot open CSV file: " + path);
  std::string line;
  std::vector<std::string> header;
  std::vector<std::pair<double, double>> points;
  std::vector<double> gammas_seen;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    for (std::string field; std::getline(ss, field, ',');) fields.push_back(field);
    if (header.empty()) {
      header = fields;
      continue;
    }
    // getline drops a trailing empty field (the usual empty error column).
    while (fields.size() < header.size()) fields.emplace_back();
    auto idx = [&](const std::string& name) {
      for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name) return static_cast<int>(i);
      throw SpecError("CSV lacks required column: " + name);
    };
    if (fields[idx("model")] != model) continue;
    if (!fields[idx("error")].empty()) continue;
    const double g = std::stod(fields[idx("gamma")]);
    const int n = std::stoi(fields[idx("N")]);
    if (gamma && g != *gamma) continue;
    if (n < n_min || n > n_max) continue;
    if (!gamma) gammas_seen.push_back(g);
    points.emplace_back(n, std::stod(fields[idx("J")]));
  }
  if (!gamma)
    for (double g : gammas_seen)
      if (g != gammas_seen.front())
        throw SpecError("CSV mixes several gamma values; pick one with --gamma");
  return points;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "heatchain: steady-state heat transport in boundary-driven qubit chains\n"
      "with a classical exclusion-chain comparator"};
  app.require_subcommand(1);
  app.set_config("--config", "", "read options from an INI-style file");
  argv = app.ensure_utf8(argv);

  std::string output_dir = ".";
  app.add_option("--output-dir", output_dir, "directory for CSV and plot scripts")
      ->capture_default_str();
  bool plot_scripts = true;
  app.add_flag("--plot-scripts,!--no-plot-scripts", plot_scripts,
               "emit a matplotlib script next to each CSV")
      ->capture_default_str();

  // ---- solve ----
  auto* solve = app.add_subcommand("solve", "solve one chain and print its observables");
  int solve_sites = 0;
  double solve_omega = 0.0, solve_coupling = 0.0, solve_dephasing = 0.0;
  BathOptions solve_baths;
  SolverCliOptions solve_solver;
  std::string dump_liouvillian;
  solve->add_option("--sites,-n", solve_sites, "chain length N")->required();
  solve->add_option("--omega", solve_omega, "uniform on-site energy")->required();
  solve->add_option("--coupling,-g", solve_coupling, "uniform hopping g");
  solve->add_option("--dephasing", solve_dephasing, "dephasing rate gamma")->required();
  solve_baths.attach(*solve);
  solve_solver.attach(*solve);
  solve->add_option("--dump-liouvillian", dump_liouvillian,
                    "write the assembled superoperator triplets to this file");
  solve->callback([&] {
    if (solve_sites >= 2 && solve->count("--coupling") == 0)
      throw SpecError("--coupling is required for chains with more than one site");
    const ChainSpec spec =
        ChainSpec::uniform(solve_sites, solve_omega, solve_coupling, solve_baths.left(),
                           solve_baths.right(), solve_dephasing);
    if (!dump_liouvillian.empty()) {
      std::ofstream out(dump_liouvillian);
      dump_triplets(assemble_liouvillian(spec), out);
      std::cout << "wrote " << dump_liouvillian << "\n";
    }
    const DenseMatrix rho = solve_steady_state(spec, solve_solver.options());
    const SteadyStateReport report = extract_observables(rho, spec);
    std::cout << "J_left        = " << format_double(report.current_left) << "\n"
              << "J_right       = " << format_double(report.current_right) << "\n"
              << "deph_power    = " << format_double(report.dephasing_power) << "\n"
              << "delta         = " << format_double(report.delta) << "\n";
    std::cout << "populations   =";
    for (Eigen::Index i = 0; i < report.populations.size(); ++i)
      std::cout << ' ' << format_double(report.populations(i));
    std::cout << "\ncoherences    =";
    for (const Complex& z : report.bond_coherences)
      std::cout << ' ' << format_double(z.real()) << (z.imag() < 0 ? "-" : "+")
                << format_double(std::abs(z.imag())) << 'i';
    std::cout << "\n";
  });

  // ---- size-sweep ----
  auto* size = app.add_subcommand("size-sweep", "J as a function of chain length");
  double size_omega = 0.0, size_coupling = 0.0, size_hop = 0.0;
  BathOptions size_baths;
  SolverCliOptions size_solver;
  std::vector<int> size_quantum{2, 3, 4, 5, 6, 7, 8};
  std::vector<int> size_classical;
  std::vector<double> size_gammas{0.0, 0.5, 5.0};
  size->add_option("--omega", size_omega, "uniform on-site energy")->required();
  size->add_option("--coupling,-g", size_coupling, "uniform hopping g")->required();
  size_baths.attach(*size);
  size_solver.attach(*size);
  size->add_option("--quantum-sizes", size_quantum, "chain lengths for quantum solves")
      ->capture_default_str();
  size->add_option("--classical-sizes", size_classical,
                   "chain lengths for the classical comparator (needs --hop-rate)");
  auto* size_hop_opt =
      size->add_option("--hop-rate,-V", size_hop, "classical hop rate V");
  size->add_option("--gammas", size_gammas, "dephasing rates, one quantum curve each")
      ->capture_default_str();
  size->callback([&] {
    if (!size_classical.empty() && size_hop_opt->count() == 0)
      throw SpecError("--hop-rate is required when classical sizes are requested");
    SweepPlan plan;
    plan.kind = SweepPlan::Kind::Size;
    plan.base = ChainSpec::uniform(2, size_omega, size_coupling, size_baths.left(),
                                   size_baths.right());
    plan.quantum_sizes = size_quantum;
    plan.classical_sizes = size_classical;
    plan.include_classical = !size_classical.empty();
    plan.dephasing_rates = size_gammas;
    plan.hop_rate = size_hop_opt->count() ? size_hop : 1.0;
    plan.solver = size_solver.options();
    const auto csv = prepare_output(output_dir, "size-sweep.csv");
    std::ofstream out(csv);
    report_rows(run_size_sweep(plan, out));
    std::cout << "wrote " << csv.string() << "\n";
    if (plot_scripts) write_plot_script(csv, PlotKind::LogLog);
  });

  // ---- temp-sweep ----
  auto* temp = app.add_subcommand("temp-sweep", "J as a function of T_1");
  double temp_omega = 0.0, temp_coupling = 0.0, temp_hop = 0.0;
  BathOptions temp_baths;
  SolverCliOptions temp_solver;
  std::vector<double> temp_values;
  std::vector<int> temp_quantum{4};
  std::vector<int> temp_classical;
  std::vector<double> temp_gammas{0.0, 0.5, 5.0};
  temp->add_option("--omega", temp_omega, "uniform on-site energy")->required();
  temp->add_option("--coupling,-g", temp_coupling, "uniform hopping g")->required();
  temp_baths.attach(*temp, /*with_left_temperature=*/false);
  temp_solver.attach(*temp);
  temp->add_option("--temps", temp_values, "T_1 values")->required();
  temp->add_option("--quantum-sizes", temp_quantum, "quantum chain lengths")
      ->capture_default_str();
  temp->add_option("--classical-sizes", temp_classical,
                   "classical chain lengths (needs --hop-rate)");
  auto* temp_hop_opt =
      temp->add_option("--hop-rate,-V", temp_hop, "classical hop rate V");
  temp->add_option("--gammas", temp_gammas, "dephasing rates")->capture_default_str();
  temp->callback([&] {
    if (!temp_classical.empty() && temp_hop_opt->count() == 0)
      throw SpecError("--hop-rate is required when classical sizes are requested");
    SweepPlan plan;
    plan.kind = SweepPlan::Kind::Temperature;
    // T_1 placeholder 0; each row replaces the left bath with its own T.
    plan.base = ChainSpec::uniform(2, temp_omega, temp_coupling,
                                   BathSpec::from_temperature(temp_baths.gamma_left, 0.0),
                                   temp_baths.right());
    plan.temperatures = temp_values;
    plan.quantum_sizes = temp_quantum;
    plan.classical_sizes = temp_classical;
    plan.include_classical = !temp_classical.empty();
    plan.dephasing_rates = temp_gammas;
    plan.hop_rate = temp_hop_opt->count() ? temp_hop : 1.0;
    plan.solver = temp_solver.options();
    const auto csv = prepare_output(output_dir, "temp-sweep.csv");
    std::ofstream out(csv);
    report_rows(run_temperature_sweep(plan, out));
    std::cout << "wrote " << csv.string() << "\n";
    if (plot_scripts) write_plot_script(csv, PlotKind::Linear);
  });

  // ---- dephasing-sweep ----
  auto* deph = app.add_subcommand("dephasing-sweep", "J as a function of gamma");
  double deph_omega = 0.0, deph_coupling = 0.0;
  BathOptions deph_baths;
  SolverCliOptions deph_solver;
  std::vector<int> deph_sizes;
  std::vector<double> deph_gammas;
  deph->add_option("--omega", deph_omega, "uniform on-site energy")->required();
  deph->add_option("--coupling,-g", deph_coupling, "uniform hopping g")->required();
  deph_baths.attach(*deph);
  deph_solver.attach(*deph);
  deph->add_option("--quantum-sizes", deph_sizes, "chain lengths")->required();
  deph->add_option("--gammas", deph_gammas, "dephasing rates to sweep")->required();
  deph->callback([&] {
    SweepPlan plan;
    plan.kind = SweepPlan::Kind::Dephasing;
    plan.base = ChainSpec::uniform(2, deph_omega, deph_coupling, deph_baths.left(),
                                   deph_baths.right());
    plan.quantum_sizes = deph_sizes;
    plan.dephasing_rates = deph_gammas;
    plan.solver = deph_solver.options();
    const auto csv = prepare_output(output_dir, "dephasing-sweep.csv");
    std::ofstream out(csv);
    report_rows(run_dephasing_sweep(plan, out));
    std::cout << "wrote " << csv.string() << "\n";
    if (plot_scripts) write_plot_script(csv, PlotKind::LogLog);
  });

  // ---- disorder ----
  auto* dis = app.add_subcommand(
      "disorder", "random chains solved with and without dephasing");
  BathOptions dis_baths;
  SolverCliOptions dis_solver;
  int dis_sites = 5, dis_samples = 1000;
  std::uint64_t dis_seed = 0;
  double dis_gamma = 1.0;
  dis_baths.attach(*dis);
  dis_solver.attach(*dis);
  dis->add_option("--sites", dis_sites, "chain length")->capture_default_str();
  dis->add_option("--samples", dis_samples, "ensemble size")->capture_default_str();
  dis->add_option("--seed", dis_seed, "ensemble seed (recorded in the CSV)")
      ->capture_default_str();
  dis->add_option("--dephasing", dis_gamma,
                  "dephasing rate applied to each sample's dephased twin")
      ->capture_default_str();
  dis->callback([&] {
    SweepPlan plan;
    plan.kind = SweepPlan::Kind::Disorder;
    plan.base.n_sites = 1;
    plan.base.site_energies = {1.0};
    plan.base.couplings = {};
    plan.base.bath_left = dis_baths.left();
    plan.base.bath_right = dis_baths.right();
    plan.disorder_sites = dis_sites;
    plan.sample_count = dis_samples;
    plan.seed = dis_seed;
    plan.disorder_dephasing = dis_gamma;
    plan.solver = dis_solver.options();
    const auto csv = prepare_output(output_dir, "disorder.csv");
    std::ofstream out(csv);
    const DisorderSummary summary = run_disorder_ensemble(plan, out);
    std::cout << "samples           = " << summary.sample_count << "\n"
              << "redraws           = " << summary.redraw_count << "\n"
              << "fraction_reduced  = " << format_double(summary.fraction_reduced) << "\n"
              << "mean J (plain)    = " << format_double(summary.mean_plain) << "\n"
              << "mean J over helped= " << format_double(summary.mean_plain_over_helped)
              << "\n"
              << "helped samples sit below the ensemble average: "
              << (summary.conditional_below_average ? "yes" : "no") << "\n";
    std::cout << "wrote " << csv.string() << "\n";
  });

  // ---- entangle-region ----
  auto* ent = app.add_subcommand("entangle-region",
                                 "map steady-state entanglement over (s1, sN)");
  EntanglementScanOptions scan;
  ent->add_option("--grid-points", scan.grid_points, "grid resolution per s axis")
      ->capture_default_str();
  ent->add_option("--s-max", scan.s_max, "largest asymptotic population scanned")
      ->capture_default_str();
  ent->add_option("--search-points", scan.search_points,
                  "log-grid resolution per (g, gamma) axis")
      ->capture_default_str();
  ent->add_option("--search-min", scan.search_min, "smallest searched g and gamma")
      ->capture_default_str();
  ent->add_option("--search-max", scan.search_max, "largest searched g and gamma")
      ->capture_default_str();
  ent->add_flag("--refine,!--no-refine", scan.refine,
                "refine the search once around the best hit")
      ->capture_default_str();
  ent->callback([&] {
    SweepPlan plan;
    plan.kind = SweepPlan::Kind::EntanglementRegion;
    plan.scan = scan;
    const auto csv = prepare_output(output_dir, "entangle-region.csv");
    std::ofstream out(csv);
    const EntanglementRegion region = run_entanglement_region(plan, out);
    int entangled = 0;
    for (const auto& cell : region.cells) entangled += cell.entangled ? 1 : 0;
    std::cout << entangled << " of " << region.cells.size()
              << " cells can be entangled\n";
    std::cout << "wrote " << csv.string() << "\n";
    if (plot_scripts) write_plot_script(csv, PlotKind::Region);
  });

  // ---- fit ----
  auto* fit = app.add_subcommand("fit", "power-law fit J ~ c N^(alpha-1) of a sweep CSV");
  std::string fit_csv, fit_model = "quantum";
  double fit_gamma = 0.0;
  int fit_nmin = 2, fit_nmax = 1 << 20;
  fit->add_option("--csv", fit_csv, "sweep CSV to fit")->required();
  fit->add_option("--model", fit_model, "model column filter")
      ->check(CLI::IsMember({"quantum", "classical"}))
      ->capture_default_str();
  auto* fit_gamma_opt =
      fit->add_option("--gamma", fit_gamma, "dephasing curve to fit (quantum)");
  fit->add_option("--n-min", fit_nmin, "smallest N included")->capture_default_str();
  fit->add_option("--n-max", fit_nmax, "largest N included");
  fit->callback([&] {
    std::optional<double> gamma;
    if (fit_gamma_opt->count()) gamma = fit_gamma;
    const auto points = read_fit_points(fit_csv, fit_model, gamma, fit_nmin, fit_nmax);
    const PowerLawFit result = fit_power_law(points);
    std::cout << "points    = " << points.size() << "\n"
              << "alpha     = " << format_double(result.alpha) << "\n"
              << "prefactor = " << format_double(result.prefactor) << "\n"
              << "R         = " << format_double(result.r) << "\n"
              << "R^2       = " << format_double(result.r_squared()) << "\n";
  });

  try {
    CLI11_PARSE(app, argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
