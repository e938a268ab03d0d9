#pragma once

// Time-stepped co-simulation of one vehicle crossing a road block past an
// RSU: ground-truth motion, DSRC beacons, GPS error, the beam controller (or
// the legacy per-BI training) and the MCS-mapped link.

#include <cstdint>
#include <optional>
#include <vector>

#include "hetbeam/alignment.hpp"
#include "hetbeam/config.hpp"
#include "hetbeam/kinematics.hpp"

namespace hetbeam {

struct RunOptions {
  /// Overrides the scenario's beamwidth choice for the proposed scheme.
  std::optional<double> theta_deg;
  bool record_trajectory = false;
};

struct ScenarioResult {
  Scheme scheme = Scheme::proposed;
  std::uint64_t seed = 0;
  double theta_deg = 0.0;  ///< beamwidth in use (sector width for the baseline)
  double speed = 0.0;      ///< drawn vehicle speed
  double horizon = 0.0;
  double total_bits = 0.0;
  /// Bits had every step with a beam in place been aligned.
  double upper_bound_bits = 0.0;
  double mean_throughput_bps = 0.0;
  double outage_time = 0.0;
  double outage_fraction = 0.0;
  /// Training time per BI over the BI length; 0 for the proposed scheme.
  double overhead_fraction = 0.0;
  int realignments = 0;
  int lost_trainings = 0;  ///< BIs lost to A-BFT collisions
  std::vector<AlignmentInterval> intervals;
  std::vector<VehicleState> trajectory;
};

/// Beamwidth the proposed scheme runs with: the configured theta, or the
/// expected-rate optimum for the error model when adaptive.
double resolve_beamwidth(const ScenarioConfig& config);

/// Runs one replica. Bit-identical for equal (config, seed, options).
/// Throws ConfigError on an invalid configuration.
ScenarioResult run_scenario(const ScenarioConfig& config, std::uint64_t seed,
                            const RunOptions& options = {});

inline ScenarioResult run_scenario(const ScenarioConfig& config) {
  return run_scenario(config, config.seed);
}

}  // namespace hetbeam
