#include "hetbeam/kinematics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hetbeam/errors.hpp"
#include "hetbeam/stochastic.hpp"

namespace hetbeam {

namespace {

// sin(x) / x, continuous through 0
double sinc(double x) {
  if (std::abs(x) < 1e-4) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sin(x) / x;
}

}  // namespace

void MobilityParams::validate() const {
  if (!(v_avg > 0.0)) throw InvalidParameter("mobility.v_avg must be > 0");
  if (!(speed_variance >= 0.0)) throw InvalidParameter("mobility.speed_variance must be >= 0");
  if (lane_count < 1) throw InvalidParameter("mobility.lane_count must be >= 1");
  if (!(lane_width > 0.0)) throw InvalidParameter("mobility.lane_width must be > 0");
  if (!(road_block_length > 0.0)) throw InvalidParameter("mobility.road_block_length must be > 0");
  if (start_lane < 0 || start_lane >= lane_count) {
    throw InvalidParameter("mobility.start_lane must index an existing lane");
  }
  if (!(maneuver_interval > 0.0)) throw InvalidParameter("mobility.maneuver_interval must be > 0");
  if (!(maneuver_yaw_sigma >= 0.0)) {
    throw InvalidParameter("mobility.maneuver_yaw_sigma must be >= 0");
  }
}

PredictedPosition predict_position(const VehicleState& anchor, double t_pr) {
  if (!(t_pr >= 0.0)) throw InvalidParameter("prediction horizon must be >= 0");

  PredictedPosition out;
  const double arc = anchor.speed * t_pr;
  const double beta_deg = 2.0 * anchor.yaw_rate_dps * t_pr;
  const double beta = deg_to_rad(beta_deg);

  out.arc_angle_deg = beta_deg;
  out.radius = beta == 0.0 ? std::numeric_limits<double>::infinity() : arc / std::abs(beta);
  // 2 R sin(beta / 2) written so the straight-line limit is exact
  out.chord = arc * sinc(0.5 * beta);
  out.pos = anchor.pos + out.chord * unit_from_bearing_deg(anchor.heading_deg + 0.5 * beta_deg);
  return out;
}

VehicleState step_true_motion(const VehicleState& state, double dt,
                              std::optional<double> yaw_override, const RoadBounds* road) {
  if (!(dt > 0.0)) throw InvalidParameter("time step must be > 0");

  VehicleState s = state;
  if (yaw_override) s.yaw_rate_dps = *yaw_override;

  const auto p = predict_position(s, dt);
  VehicleState next = s;
  next.pos = p.pos;
  next.heading_deg = normalize_deg(s.heading_deg + p.arc_angle_deg);
  next.timestamp = s.timestamp + dt;

  if (road != nullptr && (next.pos.y < road->y_min || next.pos.y > road->y_max)) {
    next.pos.y = std::clamp(next.pos.y, road->y_min, road->y_max);
    // keep the longitudinal direction of travel
    next.heading_deg = unit_from_bearing_deg(next.heading_deg).x >= 0.0 ? 90.0 : 270.0;
    next.yaw_rate_dps = 0.0;
  }
  return next;
}

double draw_speed(const MobilityParams& params, Rng& rng) {
  if (!(params.v_avg > 0.0)) throw InvalidParameter("v_avg must be > 0");
  if (params.speed_variance == 0.0) return params.v_avg;
  const double sd = std::sqrt(params.speed_variance);
  for (;;) {
    const double v = rng.normal(params.v_avg, sd);
    if (v >= 0.0) return v;
  }
}

double draw_maneuver_yaw(const MobilityParams& params, Rng& rng) {
  if (params.maneuver_yaw_sigma == 0.0) return 0.0;
  return params.maneuver_yaw_sigma * rng.standard_normal();
}

}  // namespace hetbeam
