// hetbeam: command-line front end for the beam-alignment simulator and its
// analyses. Every subcommand reads the same JSON scenario file.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hetbeam/analysis.hpp"
#include "hetbeam/config.hpp"
#include "hetbeam/config_io.hpp"
#include "hetbeam/errors.hpp"
#include "hetbeam/figures.hpp"
#include "hetbeam/overhead.hpp"
#include "hetbeam/rf_link.hpp"
#include "hetbeam/simulation.hpp"
#include "hetbeam/sweep.hpp"

namespace fs = std::filesystem;
using namespace hetbeam;

namespace {

struct Common {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out_dir = ".";
  int workers = 0;
};

void add_common(CLI::App* cmd, Common& c, bool with_workers = false) {
  cmd->add_option("--config", c.config_path, "Scenario JSON file (defaults if omitted)");
  cmd->add_option("--seed", c.seed, "Override the scenario seed");
  cmd->add_option("--out", c.out_dir, "Output directory")->capture_default_str();
  if (with_workers) cmd->add_option("--workers", c.workers, "Worker threads (0: all cores)");
}

ScenarioConfig load(const Common& c) {
  ScenarioConfig cfg = c.config_path.empty() ? parse_config("") : load_config(c.config_path);
  if (c.seed) cfg.seed = *c.seed;
  return cfg;
}

fs::path out_dir(const Common& c) {
  fs::path dir(c.out_dir);
  fs::create_directories(dir);
  return dir;
}

void write(const csv::Table& t, const fs::path& file) {
  t.write(file);
  std::cout << "wrote " << file.string() << "\n";
}

int cmd_simulate(const Common& c, std::optional<std::string> scheme, std::optional<double> theta) {
  ScenarioConfig cfg = load(c);
  if (scheme) cfg.scheme = scheme_from_string(*scheme);
  RunOptions opt;
  opt.theta_deg = theta;
  opt.record_trajectory = true;
  const auto res = run_scenario(cfg, cfg.seed, opt);
  const auto dir = out_dir(c);
  write(report::intervals_table(res.intervals), dir / "intervals.csv");
  write(report::trajectory_table(res.trajectory), dir / "trajectory.csv");

  SweepCell cell{cfg.scheme, cfg.gps.mu, cfg.mobility.v_avg, theta};
  RunRecord rec{"single", cell, 0, res.seed, res.theta_deg, res.mean_throughput_bps,
                res.outage_fraction};
  write(report::summary_table({rec}), dir / "summary.csv");

  std::printf("scheme %s  theta %.3f deg  speed %.3f m/s  horizon %.4f s\n",
              std::string(to_string(res.scheme)).c_str(), res.theta_deg, res.speed, res.horizon);
  std::printf("throughput %.6g bit/s  outage %.4f  realignments %d  overhead %.4f\n",
              res.mean_throughput_bps, res.outage_fraction, res.realignments,
              res.overhead_fraction);
  return 0;
}

int cmd_sweep(const Common& c, std::optional<int> replications) {
  ScenarioConfig cfg = load(c);
  SweepSpec spec = cfg.sweep;
  if (replications) spec.replications = *replications;
  const auto result = run_sweep(cfg, spec, c.workers);
  write(report::summary_table(result.runs), out_dir(c) / "summary.csv");
  int failed = 0;
  for (const auto& cell : result.cells) {
    if (!cell.failed) continue;
    ++failed;
    std::cerr << "cell failed: " << to_string(cell.cell.scheme) << " mu=" << cell.cell.error_mu
              << " v=" << cell.cell.velocity << ": " << cell.error << "\n";
  }
  std::cout << result.runs.size() << " runs, " << failed << " failed cells\n";
  return failed == 0 ? 0 : 4;
}

int cmd_overhead(const Common& c, int n_min, int n_max) {
  const ScenarioConfig cfg = load(c);
  const auto rows = overhead::overhead_table(cfg.timings, cfg.topo, n_min, n_max);
  write(report::overhead_csv(rows), out_dir(c) / "overhead.csv");
  std::printf("%4s %12s %10s\n", "N", "total_ms", "fraction");
  for (const auto& r : rows) std::printf("%4d %12.4f %10.4f\n", r.n_stations, r.t_total * 1e3, r.fraction_of_bi);
  return 0;
}

int cmd_sensitivity(const Common& c) {
  const ScenarioConfig cfg = load(c);
  const auto geom = cfg.analysis_geometry(cfg.mobility.v_avg);
  const double theta = cfg.analysis.sensitivity_theta_deg;
  std::vector<analysis::SensitivityResult> rows;
  for (auto axis : {analysis::ErrorAxis::x, analysis::ErrorAxis::y}) {
    std::vector<double> errors;
    for (auto it = cfg.analysis.sensitivity_errors_m.rbegin();
         it != cfg.analysis.sensitivity_errors_m.rend(); ++it) {
      errors.push_back(-*it);
    }
    errors.insert(errors.end(), cfg.analysis.sensitivity_errors_m.begin(),
                  cfg.analysis.sensitivity_errors_m.end());
    for (double e : errors) {
      for (auto method : {analysis::DerivativeMethod::analytic,
                          analysis::DerivativeMethod::finite_difference}) {
        try {
          rows.push_back(analysis::sensitivity_coefficient(axis, e, theta, geom, method));
        } catch (const BoundaryNondifferentiable& ex) {
          std::cerr << "skipped " << analysis::to_string(axis) << "=" << e << ": " << ex.what()
                    << "\n";
        }
      }
    }
  }
  write(report::sensitivity_table(rows), out_dir(c) / "sensitivity.csv");
  return 0;
}

int cmd_optimize(const Common& c) {
  const ScenarioConfig cfg = load(c);
  const auto geom = cfg.analysis_geometry(cfg.mobility.v_avg);
  const double ratio = cfg.gps.mu > 0.0 ? cfg.gps.sigma / cfg.gps.mu : 1.0 / 3.0;
  std::vector<analysis::BeamwidthOptimum> optima;
  for (double mu : cfg.analysis.error_mus) {
    optima.push_back(analysis::optimize_beamwidth(GpsErrorModel{mu, ratio * mu}, geom,
                                                  cfg.analysis.theta_grid(),
                                                  cfg.analysis.refine_tolerance_deg));
    const auto& o = optima.back();
    std::printf("mu %.3g m: theta* %.3f deg, %.6g bit/s (per-axis grid argmax x %.1f, y %.1f)\n",
                mu, o.theta_star_deg, o.expected_rate_bps, o.theta_star_x_deg, o.theta_star_y_deg);
  }
  const auto dir = out_dir(c);
  write(report::optimum_table(optima), dir / "optimum.csv");
  write(report::optimum_grid_table(optima), dir / "optimum_grid.csv");
  return 0;
}

int cmd_link_audit(const Common& c, double d, double theta, double shadowing) {
  const ScenarioConfig cfg = load(c);
  const auto b = rf::link_budget(d, theta, cfg.link, shadowing);
  const auto mcs = cfg.mcs_table();
  std::printf("distance              %12.4f m\n", b.distance_m);
  std::printf("beamwidth             %12.4f deg\n", b.beamwidth_deg);
  std::printf("tx power              %12.4f dBm\n", b.p_tx_dbm);
  std::printf("tx gain               %12.4f dBi\n", b.gain_tx_dbi);
  std::printf("rx gain               %12.4f dBi\n", b.gain_rx_dbi);
  std::printf("10 n log10(d), d0=1 m %12.4f dB\n", b.distance_term_db);
  std::printf("shadowing             %12.4f dB\n", b.shadowing_db);
  std::printf("channel attenuation   %12.4f dB (flat, all distances)\n", b.channel_att_db);
  std::printf("atmospheric           %12.4f dB\n", b.atmospheric_db);
  std::printf("rain                  %12.4f dB\n", b.rain_db);
  std::printf("path loss             %12.4f dB\n", b.path_loss_db);
  std::printf("rx power              %12.4f dBm\n", b.p_rx_dbm);
  std::printf("noise power           %12.4f dBm\n", b.noise_power_dbm);
  std::printf("snr                   %12.4f dB\n", b.snr_db);
  std::printf("shannon capacity      %12.6g bit/s\n", b.capacity_bps);
  std::printf("mcs throughput        %12.6g bit/s\n", rf::throughput_bps(b.snr_db, mcs));
  return 0;
}

int cmd_emit(const Common& c, int fig) {
  const auto figure = report::figure_from_number(fig);
  const fs::path dir(c.out_dir);
  const auto results = report::load_results(dir);
  const auto table = report::emit_figure(results, figure);
  write(table, out_dir(c) / report::figure_filename(figure));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mmWave V2I beam alignment simulator"};
  app.require_subcommand(1);

  Common common;
  std::optional<std::string> scheme;
  std::optional<double> theta;
  std::optional<int> replications;
  int n_min = 1, n_max = 10;
  double distance = 20.0, audit_theta = 9.0, shadowing = 0.0;
  int fig = 0;

  auto* simulate = app.add_subcommand("simulate", "Run one scenario replica");
  add_common(simulate, common);
  simulate->add_option("--scheme", scheme, "proposed or baseline");
  simulate->add_option("--theta", theta, "Fixed beamwidth (deg) for the proposed scheme");

  auto* sweep = app.add_subcommand("sweep", "Run the configured sweep grid");
  add_common(sweep, common, true);
  sweep->add_option("--replications", replications, "Seeds per cell");

  auto* ovh = app.add_subcommand("overhead", "Legacy training overhead per BI");
  add_common(ovh, common);
  ovh->add_option("--n-min", n_min)->capture_default_str();
  ovh->add_option("--n-max", n_max)->capture_default_str();

  auto* sens = app.add_subcommand("sensitivity", "Data-volume sensitivity to position error");
  add_common(sens, common);

  auto* opt = app.add_subcommand("optimize", "Error-aware optimum beamwidth");
  add_common(opt, common);

  auto* audit = app.add_subcommand("link-audit", "Print every term of the link budget");
  add_common(audit, common);
  audit->add_option("--distance", distance, "metres")->capture_default_str();
  audit->add_option("--theta", audit_theta, "beamwidth, deg")->capture_default_str();
  audit->add_option("--shadowing", shadowing, "dB")->capture_default_str();

  auto* emit = app.add_subcommand("emit", "Write plot data from results in --out");
  add_common(emit, common);
  emit->add_option("--fig", fig, "2, 6, 7 or 8")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*simulate) return cmd_simulate(common, scheme, theta);
    if (*sweep) return cmd_sweep(common, replications);
    if (*ovh) return cmd_overhead(common, n_min, n_max);
    if (*sens) return cmd_sensitivity(common);
    if (*opt) return cmd_optimize(common);
    if (*audit) return cmd_link_audit(common, distance, audit_theta, shadowing);
    if (*emit) return cmd_emit(common, fig);
  } catch (const ConfigError& e) {
    std::cerr << (e.kind() == ConfigError::Kind::parse ? "config parse error: "
                                                       : "config validation error: ")
              << e.what() << "\n";
    return 2;
  } catch (const MissingAnalysis& e) {
    std::cerr << "missing analysis: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
