#pragma once

// Grid sweeps over (error mean, velocity, beamwidth, scheme) with seeded
// replications, run on a worker pool. Results are assembled in grid order,
// so the output never depends on thread scheduling.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hetbeam/config.hpp"

namespace hetbeam {

struct SweepCell {
  Scheme scheme = Scheme::proposed;
  double error_mu = 0.0;
  double velocity = 0.0;
  std::optional<double> theta;  ///< nullopt: the scenario's own beamwidth choice
};

struct RunRecord {
  std::string scenario_id;
  SweepCell cell;
  int replication = 0;
  std::uint64_t seed = 0;
  double theta_deg = 0.0;  ///< beamwidth actually used
  double mean_throughput_bps = 0.0;
  double outage_fraction = 0.0;
};

struct CellSummary {
  SweepCell cell;
  double theta_deg = 0.0;
  int replications = 0;
  double mean_throughput_bps = 0.0;
  double std_throughput_bps = 0.0;  ///< sample standard deviation
  double mean_outage_fraction = 0.0;
  bool failed = false;
  std::string error;
};

struct SweepResult {
  std::vector<RunRecord> runs;  ///< successful cells only, grid order
  std::vector<CellSummary> cells;

  bool any_failed() const;
};

/// Grid cells in execution order: error_mu, velocity, theta, scheme, with
/// the theta axis applied to the proposed scheme only.
std::vector<SweepCell> expand_cells(const SweepSpec& spec);

/// Scenario configuration for one cell. The GPS sigma keeps the base
/// sigma / mu ratio (1/3 if the base has the error disabled).
ScenarioConfig cell_config(const ScenarioConfig& base, const SweepCell& cell);

/// Replication r of every cell uses seed base.seed + r. A cell whose run
/// throws is marked failed and contributes no runs. workers <= 0 uses the
/// hardware concurrency.
SweepResult run_sweep(const ScenarioConfig& base, const SweepSpec& spec, int workers = 0);

/// Mean and sample standard deviation over consecutive runs of the same
/// cell and beamwidth.
std::vector<CellSummary> summarize(const std::vector<RunRecord>& runs);

}  // namespace hetbeam
