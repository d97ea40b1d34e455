#include "heatchain/experiments.hpp"

#include <atomic>
#include <charconv>
#include <cmath>
#include <limits>
#include <mutex>
#include <ostream>
#include <random>
#include <sstream>
#include <thread>

#include "heatchain/classical.hpp"
#include "heatchain/observables.hpp"

namespace heatchain {

namespace {

constexpr const char* kSchemaVersion = "v1";

std::string sanitize(std::string text) {
  for (char& c : text)
    if (c == ',' || c == '\n' || c == '\r') c = ';';
  return text;
}

std::string join(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ' ';
    out += format_double(values[i]);
  }
  return out;
}

std::string join(const std::vector<int>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(values[i]);
  }
  return out;
}

void comment(std::ostream& out, const std::string& key, const std::string& value) {
  out << "# " << key << " = " << value << "\n";
}

std::string describe_bath(const BathSpec& bath) {
  std::string mode = bath.entry == BathSpec::Entry::Temperature ? "T" : "n";
  return "Gamma=" + format_double(bath.interaction_rate) + " " + mode + "=" +
         format_double(bath.value);
}

void base_header(std::ostream& out, const SweepPlan& plan, const std::string& schema) {
  comment(out, "schema", schema + " " + kSchemaVersion);
  comment(out, "bath_left", describe_bath(plan.base.bath_left));
  comment(out, "bath_right", describe_bath(plan.base.bath_right));
  comment(out, "seed", std::to_string(plan.seed));
}

void uniform_base_header(std::ostream& out, const SweepPlan& plan,
                         const std::string& schema) {
  base_header(out, plan, schema);
  comment(out, "omega", format_double(plan.base.site_energies[0]));
  comment(out, "coupling",
          format_double(plan.base.n_sites >= 2 ? plan.base.couplings[0] : 0.0));
}

void require_uniform_base(const ChainSpec& base) {
  base.validate();
  if (!base.has_uniform_energy() || !base.has_uniform_coupling())
    throw SpecError("sweeps rebuild chains of several sizes and need a uniform base spec");
}

ChainSpec resized_base(const ChainSpec& base, int n, double gamma) {
  return ChainSpec::uniform(n, base.site_energies[0],
                            base.n_sites >= 2 ? base.couplings[0] : 1.0, base.bath_left,
                            base.bath_right, gamma);
}

ClassicalChainSpec classical_of(const SweepPlan& plan, int n) {
  ClassicalChainSpec spec;
  spec.n_sites = n;
  spec.hop_rate = plan.hop_rate;
  spec.omega = plan.base.site_energies[0];
  spec.bath_left = plan.base.bath_left;
  spec.bath_right = plan.base.bath_right;
  return spec;
}

double quantum_current(const ChainSpec& spec, const SolverOptions& solver) {
  const DenseMatrix rho = solve_steady_state(spec, solver);
  return bath_current(rho, spec, BathSide::Left);
}

double classical_energy_current(const ClassicalChainSpec& spec) {
  const OccupationProfile profile = solve_classical_steady_state(spec);
  return spec.omega * classical_current(profile, spec);
}

void fill_rows_parallel(std::vector<SweepRow>& rows,
                        const std::function<void(SweepRow&)>& compute) {
  parallel_for_indexed(rows.size(), [&](std::size_t i) {
    try {
      compute(rows[i]);
    } catch (const std::exception& e) {
      rows[i].current = std::numeric_limits<double>::quiet_NaN();
      rows[i].error = sanitize(e.what());
    }
  });
}

void write_rows(std::ostream& out, const std::vector<SweepRow>& rows, bool with_t) {
  out << (with_t ? "model,N,gamma,T1,J,error\n" : "model,N,gamma,J,error\n");
  for (const SweepRow& row : rows) {
    out << row.model << ',' << row.n_sites << ',' << format_double(row.gamma) << ',';
    if (with_t) out << format_double(row.t_left) << ',';
    out << format_double(row.current) << ',' << row.error << "\n";
  }
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Top 53 bits of the engine output, uniform on [0, 1). Avoids
// std::uniform_real_distribution, whose output is implementation-defined.
double uniform_unit(std::mt19937_64& engine) {
  return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

}  // namespace

std::string format_double(double value) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

void parallel_for_indexed(std::size_t count, const std::function<void(std::size_t)>& fn) {
  std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        try {
          fn(i);
        } catch (...) {
          const std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  for (std::thread& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

std::vector<SweepRow> run_size_sweep(const SweepPlan& plan, std::ostream& csv) {
  require_uniform_base(plan.base);
  if (plan.quantum_sizes.empty() && (!plan.include_classical || plan.classical_sizes.empty()))
    throw SpecError("size sweep has no sizes to run");
  if (!plan.quantum_sizes.empty() && plan.dephasing_rates.empty())
    throw SpecError("size sweep needs at least one dephasing rate");

  std::vector<SweepRow> rows;
  for (double gamma : plan.dephasing_rates)
    for (int n : plan.quantum_sizes)
      rows.push_back({"quantum", n, gamma, 0.0, 0.0, ""});
  if (plan.include_classical)
    for (int n : plan.classical_sizes)
      rows.push_back({"classical", n, 0.0, 0.0, 0.0, ""});

  fill_rows_parallel(rows, [&](SweepRow& row) {
    if (row.model == "quantum")
      row.current = quantum_current(resized_base(plan.base, row.n_sites, row.gamma),
                                    plan.solver);
    else
      row.current = classical_energy_current(classical_of(plan, row.n_sites));
  });

  uniform_base_header(csv, plan, "size-sweep");
  comment(csv, "dephasing_rates", join(plan.dephasing_rates));
  comment(csv, "quantum_sizes", join(plan.quantum_sizes));
  if (plan.include_classical) {
    comment(csv, "classical_sizes", join(plan.classical_sizes));
    comment(csv, "hop_rate", format_double(plan.hop_rate));
  }
  write_rows(csv, rows, false);
  return rows;
}

std::vector<SweepRow> run_temperature_sweep(const SweepPlan& plan, std::ostream& csv) {
  require_uniform_base(plan.base);
  if (plan.base.bath_left.entry != BathSpec::Entry::Temperature)
    throw SpecError("temperature sweep varies T_1 and needs a temperature-mode left bath");
  if (plan.temperatures.empty()) throw SpecError("temperature sweep has no T_1 values");
  if (!plan.quantum_sizes.empty() && plan.dephasing_rates.empty())
    throw SpecError("temperature sweep needs at least one dephasing rate");

  std::vector<SweepRow> rows;
  for (int n : plan.quantum_sizes)
    for (double gamma : plan.dephasing_rates)
      for (double t : plan.temperatures)
        rows.push_back({"quantum", n, gamma, t, 0.0, ""});
  if (plan.include_classical)
    for (int n : plan.classical_sizes)
      for (double t : plan.temperatures)
        rows.push_back({"classical", n, 0.0, t, 0.0, ""});

  fill_rows_parallel(rows, [&](SweepRow& row) {
    const BathSpec left =
        BathSpec::from_temperature(plan.base.bath_left.interaction_rate, row.t_left);
    if (row.model == "quantum") {
      ChainSpec spec = resized_base(plan.base, row.n_sites, row.gamma);
      spec.bath_left = left;
      row.current = quantum_current(spec, plan.solver);
    } else {
      ClassicalChainSpec spec = classical_of(plan, row.n_sites);
      spec.bath_left = left;
      row.current = classical_energy_current(spec);
    }
  });

  uniform_base_header(csv, plan, "temperature-sweep");
  comment(csv, "temperatures", join(plan.temperatures));
  comment(csv, "dephasing_rates", join(plan.dephasing_rates));
  comment(csv, "quantum_sizes", join(plan.quantum_sizes));
  if (plan.include_classical) {
    comment(csv, "classical_sizes", join(plan.classical_sizes));
    comment(csv, "hop_rate", format_double(plan.hop_rate));
  }
  write_rows(csv, rows, true);
  return rows;
}

std::vector<SweepRow> run_dephasing_sweep(const SweepPlan& plan, std::ostream& csv) {
  require_uniform_base(plan.base);
  if (plan.quantum_sizes.empty()) throw SpecError("dephasing sweep has no sizes");
  if (plan.dephasing_rates.empty()) throw SpecError("dephasing sweep has no rates");

  std::vector<SweepRow> rows;
  for (int n : plan.quantum_sizes)
    for (double gamma : plan.dephasing_rates)
      rows.push_back({"quantum", n, gamma, 0.0, 0.0, ""});

  fill_rows_parallel(rows, [&](SweepRow& row) {
    row.current =
        quantum_current(resized_base(plan.base, row.n_sites, row.gamma), plan.solver);
  });

  uniform_base_header(csv, plan, "dephasing-sweep");
  comment(csv, "dephasing_rates", join(plan.dephasing_rates));
  comment(csv, "quantum_sizes", join(plan.quantum_sizes));
  write_rows(csv, rows, false);
  return rows;
}

DisorderSummary run_disorder_ensemble(const SweepPlan& plan, std::ostream& csv) {
  plan.base.bath_left.validate();
  plan.base.bath_right.validate();
  if (plan.disorder_sites < 2) throw SpecError("disorder ensemble needs at least two sites");
  if (plan.sample_count < 1) throw SpecError("disorder ensemble needs samples");
  if (plan.disorder_dephasing < 0.0 || !std::isfinite(plan.disorder_dephasing))
    throw SpecError("disorder dephasing rate must be finite and non-negative");

  const int n = plan.disorder_sites;
  DisorderSummary summary;
  summary.sample_count = plan.sample_count;
  summary.seed = plan.seed;
  summary.dephasing = plan.disorder_dephasing;
  summary.samples.resize(plan.sample_count);
  std::vector<int> redraws(plan.sample_count, 0);

  parallel_for_indexed(plan.sample_count, [&](std::size_t i) {
    std::mt19937_64 engine(splitmix64(plan.seed ^ (0x9e3779b97f4a7c15ULL * (i + 1))));
    DisorderSample& sample = summary.samples[i];
    for (int attempt = 0;; ++attempt) {
      if (attempt > 100)
        throw ConvergenceError("disorder sample kept failing after 100 redraws", 0.0);
      sample.site_energies.resize(n);
      sample.couplings.resize(n - 1);
      bool zero_draw = false;
      for (double& w : sample.site_energies) {
        w = uniform_unit(engine);
        zero_draw |= w == 0.0;
      }
      for (double& g : sample.couplings) {
        g = uniform_unit(engine);
        zero_draw |= g == 0.0;
      }
      if (zero_draw) {  // disconnected chain or undefined bath occupation
        ++redraws[i];
        continue;
      }
      ChainSpec spec;
      spec.n_sites = n;
      spec.site_energies = sample.site_energies;
      spec.couplings = sample.couplings;
      spec.bath_left = plan.base.bath_left;
      spec.bath_right = plan.base.bath_right;
      spec.dephasing_rate = 0.0;
      try {
        sample.current_plain = quantum_current(spec, plan.solver);
        spec.dephasing_rate = plan.disorder_dephasing;
        sample.current_dephased = quantum_current(spec, plan.solver);
      } catch (const DegenerateSteadyStateError&) {
        ++redraws[i];
        continue;
      }
      sample.reduced = sample.current_dephased < sample.current_plain;
      break;
    }
  });

  double plain_sum = 0.0, helped_sum = 0.0;
  int helped_count = 0;
  for (const DisorderSample& sample : summary.samples) {
    plain_sum += sample.current_plain;
    if (sample.reduced) ++summary.reduced_count;
    else {
      helped_sum += sample.current_plain;
      ++helped_count;
    }
  }
  for (int r : redraws) summary.redraw_count += r;
  summary.fraction_reduced = double(summary.reduced_count) / plan.sample_count;
  summary.mean_plain = plain_sum / plan.sample_count;
  summary.mean_plain_over_helped =
      helped_count ? helped_sum / helped_count : std::numeric_limits<double>::quiet_NaN();
  summary.conditional_below_average =
      helped_count > 0 && summary.mean_plain_over_helped < summary.mean_plain;

  base_header(csv, plan, "disorder-ensemble");
  comment(csv, "sites", std::to_string(n));
  comment(csv, "samples", std::to_string(plan.sample_count));
  comment(csv, "dephasing", format_double(plan.disorder_dephasing));
  comment(csv, "redraws", std::to_string(summary.redraw_count));
  comment(csv, "reduced_count", std::to_string(summary.reduced_count));
  comment(csv, "fraction_reduced", format_double(summary.fraction_reduced));
  comment(csv, "mean_plain", format_double(summary.mean_plain));
  comment(csv, "mean_plain_over_helped", format_double(summary.mean_plain_over_helped));
  comment(csv, "conditional_below_average",
          summary.conditional_below_average ? "1" : "0");
  csv << "sample";
  for (int k = 1; k <= n; ++k) csv << ",omega_" << k;
  for (int k = 1; k < n; ++k) csv << ",g_" << k;
  csv << ",J_plain,J_dephased,reduced\n";
  for (int i = 0; i < plan.sample_count; ++i) {
    const DisorderSample& sample = summary.samples[i];
    csv << i;
    for (double w : sample.site_energies) csv << ',' << format_double(w);
    for (double g : sample.couplings) csv << ',' << format_double(g);
    csv << ',' << format_double(sample.current_plain) << ','
        << format_double(sample.current_dephased) << ',' << (sample.reduced ? 1 : 0)
        << "\n";
  }
  return summary;
}

EntanglementRegion run_entanglement_region(const SweepPlan& plan, std::ostream& csv) {
  const EntanglementRegion region = scan_entanglement_region(plan.scan);
  comment(csv, "schema", std::string("entanglement-region ") + kSchemaVersion);
  comment(csv, "grid_points", std::to_string(plan.scan.grid_points));
  comment(csv, "s_max", format_double(plan.scan.s_max));
  comment(csv, "search_points", std::to_string(plan.scan.search_points));
  comment(csv, "search_range",
          format_double(plan.scan.search_min) + " " + format_double(plan.scan.search_max));
  comment(csv, "threshold", format_double(kEntanglementThreshold));
  comment(csv, "seed", std::to_string(plan.seed));
  csv << "s1,sN,entangled,max_negativity,best_g,best_gamma\n";
  for (const EntanglementRegionCell& cell : region.cells)
    csv << format_double(cell.s1) << ',' << format_double(cell.s_n) << ','
        << (cell.entangled ? 1 : 0) << ',' << format_double(cell.max_negativity) << ','
        << format_double(cell.best_g) << ',' << format_double(cell.best_gamma) << "\n";
  return region;
}

PlotKind plot_kind_for(SweepPlan::Kind kind) {
  switch (kind) {
    case SweepPlan::Kind::Temperature: return PlotKind::Linear;
    case SweepPlan::Kind::EntanglementRegion: return PlotKind::Region;
    default: return PlotKind::LogLog;
  }
}

void emit_plot_script(const std::string& csv_path, PlotKind kind, std::ostream& out) {
  const char* mode = kind == PlotKind::LogLog    ? "loglog"
                     : kind == PlotKind::Linear  ? "linear"
                                                 : "region";
  out << "#!/usr/bin/env python3\n"
         "# Renders a heatchain sweep CSV. Regenerate with the 'plot' helpers;\n"
         "# needs matplotlib only.\n"
         "import csv\n"
         "import math\n"
         "import matplotlib\n"
         "matplotlib.use(\"Agg\")\n"
         "import matplotlib.pyplot as plt\n"
         "\n"
         "CSV = \""
      << csv_path
      << "\"\n"
         "MODE = \""
      << mode
      << "\"\n"
         "\n"
         "with open(CSV) as fh:\n"
         "    rows = [line.strip().split(\",\") for line in fh\n"
         "            if line.strip() and not line.startswith(\"#\")]\n"
         "header, data = rows[0], rows[1:]\n"
         "col = {name: i for i, name in enumerate(header)}\n"
         "\n"
         "def fval(row, name):\n"
         "    try:\n"
         "        return float(row[col[name]])\n"
         "    except (KeyError, ValueError, IndexError):\n"
         "        return float(\"nan\")\n"
         "\n"
         "fig, ax = plt.subplots(figsize=(6.0, 4.2))\n"
         "if MODE == \"region\":\n"
         "    s1v = sorted({fval(r, \"s1\") for r in data})\n"
         "    sNv = sorted({fval(r, \"sN\") for r in data})\n"
         "    grid = [[0.0] * len(sNv) for _ in s1v]\n"
         "    for r in data:\n"
         "        i = s1v.index(fval(r, \"s1\"))\n"
         "        j = sNv.index(fval(r, \"sN\"))\n"
         "        grid[i][j] = 1.0 if r[col[\"entangled\"]] == \"1\" else 0.0\n"
         "    mesh = ax.pcolormesh(sNv, s1v, grid, shading=\"nearest\", cmap=\"Greys\",\n"
         "                         vmin=0.0, vmax=1.0)\n"
         "    fig.colorbar(mesh, ax=ax, label=\"entangled\")\n"
         "    ax.set_xlabel(\"$s_N$\")\n"
         "    ax.set_ylabel(\"$s_1$\")\n"
         "else:\n"
         "    xcol = \"T1\" if MODE == \"linear\" else \"N\"\n"
         "    if MODE == \"loglog\" and len({r[col[\"N\"]] for r in data}) == 1:\n"
         "        xcol = \"gamma\"  # dephasing sweep: size is fixed\n"
         "    series = {}\n"
         "    for r in data:\n"
         "        if r[col[\"error\"]]:\n"
         "            continue\n"
         "        label = r[col[\"model\"]]\n"
         "        if label == \"quantum\":\n"
         "            if xcol != \"gamma\":\n"
         "                label += \" gamma=\" + r[col[\"gamma\"]]\n"
         "            if MODE == \"linear\":\n"
         "                label += \" N=\" + r[col[\"N\"]]\n"
         "        elif MODE == \"linear\":\n"
         "            label += \" N=\" + r[col[\"N\"]]\n"
         "        x, y = fval(r, xcol), fval(r, \"J\")\n"
         "        if math.isnan(x) or math.isnan(y):\n"
         "            continue\n"
         "        if MODE == \"loglog\" and (x <= 0 or y <= 0):\n"
         "            continue\n"
         "        series.setdefault(label, []).append((x, y))\n"
         "    plot = ax.loglog if MODE == \"loglog\" else ax.plot\n"
         "    for label, points in series.items():\n"
         "        points.sort()\n"
         "        plot([p[0] for p in points], [p[1] for p in points],\n"
         "             marker=\"o\", markersize=3, label=label)\n"
         "    ax.set_xlabel(xcol)\n"
         "    ax.set_ylabel(\"J\")\n"
         "    ax.legend(fontsize=8)\n"
         "ax.set_title(CSV.rsplit(\"/\", 1)[-1])\n"
         "fig.tight_layout()\n"
         "fig.savefig(CSV + \".png\", dpi=150)\n"
         "print(\"wrote\", CSV + \".png\")\n";
}

}  // namespace heatchain
