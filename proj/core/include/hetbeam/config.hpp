#pragma once

// Scenario configuration: one value type aggregating every module's
// parameters. Defaults reproduce the reference simulation setup.

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "hetbeam/analysis.hpp"
#include "hetbeam/kinematics.hpp"
#include "hetbeam/overhead.hpp"
#include "hetbeam/rf_link.hpp"
#include "hetbeam/stochastic.hpp"

namespace hetbeam {

enum class Scheme { proposed, baseline };

std::string_view to_string(Scheme scheme);
/// Throws InvalidParameter for anything but "proposed" / "baseline".
Scheme scheme_from_string(std::string_view text);

struct Cadences {
  double dsrc_beacon = 0.100;  ///< s
  double gps_update = 1.000;   ///< s
  double bi = 0.030;           ///< s, mirrored into TopologyParams::bi_length

  friend bool operator==(const Cadences&, const Cadences&) = default;
};

/// RSU placement in road coordinates (x along the road, y across it).
struct RsuGeometry {
  double rsu_x = 20.0;
  double rsu_y = 0.25;
  /// Where the analysed beam's boresight meets the lane, past the RSU foot.
  double beam_center_offset = 2.0;

  friend bool operator==(const RsuGeometry&, const RsuGeometry&) = default;
};

struct GpsConfig {
  /// Per-axis error magnitude mean and standard deviation, metres.
  /// mu = 0 disables the error.
  double mu = 3.0;
  double sigma = 1.0;
  double beacon_loss_probability = 0.0;

  bool enabled() const { return mu > 0.0; }
  GpsErrorModel model() const { return GpsErrorModel{mu, sigma}; }
  friend bool operator==(const GpsConfig&, const GpsConfig&) = default;
};

struct BeamSettings {
  /// Proposed scheme: pick the beamwidth maximising the expected rate for
  /// the configured error model. Otherwise theta is used as given.
  bool adaptive = false;
  /// Default equals the legacy sector width 360 / 16, so both schemes use
  /// the same antenna and differ only in how they align it.
  double theta_deg = 22.5;

  friend bool operator==(const BeamSettings&, const BeamSettings&) = default;
};

struct AnalysisSettings {
  std::vector<double> error_mus{0.1, 1.0, 3.0};
  double theta_min_deg = 1.0;
  double theta_max_deg = 60.0;
  double theta_step_deg = 0.5;
  double refine_tolerance_deg = 0.1;
  /// Beamwidth used for the sensitivity curves.
  double sensitivity_theta_deg = 10.0;
  std::vector<double> sensitivity_errors_m{0.05, 0.1, 0.15, 0.2, 0.25, 0.3,
                                           0.35, 0.4, 0.45, 0.5, 0.55, 0.6};

  std::vector<double> theta_grid() const;
  friend bool operator==(const AnalysisSettings&, const AnalysisSettings&) = default;
};

struct SweepSpec {
  std::vector<double> error_mu{0.1, 1.0, 3.0};
  std::vector<double> velocity{6.0, 10.0, 14.0, 18.0, 22.0};
  /// Empty: the scenario's beam setting (adaptive by default).
  std::vector<double> theta{};
  std::vector<Scheme> schemes{Scheme::proposed, Scheme::baseline};
  int replications = 20;
  std::size_t max_cells = 100000;

  friend bool operator==(const SweepSpec&, const SweepSpec&) = default;
};

struct ScenarioConfig {
  std::uint64_t seed = 1;
  Scheme scheme = Scheme::proposed;
  /// Simulated time, s. 0: the time to cross the road block at the drawn
  /// speed.
  double horizon = 0.0;
  double time_step = 0.001;

  MobilityParams mobility;
  RsuGeometry geometry;
  rf::LinkParams link;
  GpsConfig gps;
  ShadowingModel shadowing;
  overhead::FrameTimings timings = overhead::FrameTimings::standard_defaults();
  overhead::TopologyParams topo;
  int abft_slots = 8;
  /// nullopt: the 802.11ad single-carrier table for `link`.
  std::optional<rf::McsTable> mcs;
  Cadences cadences;
  BeamSettings beam;
  AnalysisSettings analysis;
  SweepSpec sweep;

  /// Throws ConfigError(validation) naming the offending key.
  void validate() const;

  rf::McsTable mcs_table() const;
  Vec2 rsu_position() const { return {geometry.rsu_x, geometry.rsu_y}; }
  /// Straight pass along the start lane at `speed`.
  analysis::AnalysisGeometry analysis_geometry(double speed) const;
  /// nullopt when the GPS error is disabled.
  std::optional<GpsErrorModel> error_model() const;

  friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

}  // namespace hetbeam
