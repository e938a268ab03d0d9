#pragma once

// RSU beam controller driven by DSRC beacons.
//
// A beacon whose position differs from the previous one by more than the
// change threshold becomes the new anchor; otherwise the controller keeps
// dead-reckoning from the last anchor. The beam is only moved when the
// tracked position leaves the current cone, and is then steered so the
// tracked position sits on the trailing edge, giving the vehicle a full
// beamwidth of travel before the next realignment.

#include <optional>

#include "hetbeam/alignment.hpp"
#include "hetbeam/geometry.hpp"
#include "hetbeam/kinematics.hpp"

namespace hetbeam {

struct BeaconRecord {
  Vec2 est_pos;
  double speed = 0.0;
  double heading_deg = 90.0;  ///< bearing, as in VehicleState
  double yaw_rate_dps = 0.0;
  double timestamp = 0.0;
};

struct ControllerConfig {
  Vec2 rsu_pos;
  double beamwidth_deg = 10.0;
  double change_threshold_m = 0.01;
  double edge_tolerance_deg = 1e-7;

  void validate() const;
};

class BeamController {
 public:
  explicit BeamController(ControllerConfig config);

  /// Throws InvalidParameter if timestamps go backwards.
  void on_beacon(const BeaconRecord& beacon);

  /// Current beam at `now`, realigning if the tracked position left the
  /// cone. nullopt until the first beacon has arrived.
  std::optional<BeamConfig> step(double now);

  /// Position the controller believes the vehicle is at. Requires a beacon.
  Vec2 tracked_position(double now) const;

  bool has_anchor() const { return anchor_.has_value(); }
  /// Realignments so far; also the index of the current beam.
  int beam_index() const { return beam_index_; }
  const ControllerConfig& config() const { return config_; }

 private:
  ControllerConfig config_;
  std::optional<BeaconRecord> anchor_;
  std::optional<double> last_timestamp_;
  std::optional<BeamConfig> beam_;
  int beam_index_ = -1;
};

}  // namespace hetbeam
