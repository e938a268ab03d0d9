#pragma once

// Planar vehicle motion on a straight multi-lane road block.
//
// Headings are compass bearings in degrees (clockwise from +y) so that a
// chord of length c at bearing b displaces the vehicle by c * (sin b, cos b).
// The road runs along +x, i.e. bearing 90.
//
// With constant speed v and yaw rate w over t seconds the vehicle follows a
// circular arc whose central angle is beta = 2 w t degrees, radius
// R = 180 v t / (pi * beta) and chord 2 R sin(w t). The chord leaves the
// anchor at bearing heading + beta / 2 and the heading advances by beta.

#include <optional>

#include "hetbeam/geometry.hpp"

namespace hetbeam {

class Rng;

struct VehicleState {
  Vec2 pos;                    ///< metres
  double speed = 0.0;          ///< m/s, >= 0
  double heading_deg = 90.0;   ///< bearing, [0, 360)
  double yaw_rate_dps = 0.0;   ///< deg/s
  double pitch_rate_dps = 0.0; ///< carried, unused in the planar model
  double roll_rate_dps = 0.0;  ///< carried, unused in the planar model
  double timestamp = 0.0;      ///< seconds
};

struct PredictedPosition {
  Vec2 pos;
  double arc_angle_deg = 0.0;  ///< beta
  double radius = 0.0;         ///< metres; +inf for straight motion
  double chord = 0.0;          ///< metres
};

struct MobilityParams {
  double v_avg = 14.0;               ///< m/s
  double speed_variance = 2.0;       ///< (m/s)^2 of the Normal speed draw
  int lane_count = 4;
  double lane_width = 3.5;           ///< metres
  double road_block_length = 40.0;   ///< metres
  int start_lane = 1;                ///< zero-based, counted from y = 0
  double maneuver_interval = 2.0;    ///< seconds between yaw-rate resamples
  double maneuver_yaw_sigma = 3.0;   ///< deg/s

  void validate() const;
  double road_width() const { return lane_count * lane_width; }
  double lane_center(int lane) const { return (lane + 0.5) * lane_width; }

  friend bool operator==(const MobilityParams&, const MobilityParams&) = default;
};

/// Lateral band the vehicle is confined to.
struct RoadBounds {
  double y_min = 0.0;
  double y_max = 0.0;
};

/// Arc prediction from the anchor state `t_pr` seconds ahead (t_pr >= 0).
PredictedPosition predict_position(const VehicleState& anchor, double t_pr);

/// Advances ground truth by dt along the constant-rate arc. `yaw_override`
/// replaces the yaw rate before the step. When `road` is given and the step
/// leaves the band, the lateral coordinate is clamped, the heading snaps to
/// the road axis and the yaw rate is zeroed.
VehicleState step_true_motion(const VehicleState& state, double dt,
                              std::optional<double> yaw_override = std::nullopt,
                              const RoadBounds* road = nullptr);

/// Normal(v_avg, speed_variance) truncated to non-negative values by
/// rejection.
double draw_speed(const MobilityParams& params, Rng& rng);

/// Zero-mean Normal yaw rate with the configured manoeuvre sigma.
double draw_maneuver_yaw(const MobilityParams& params, Rng& rng);

}  // namespace hetbeam
