#include "hetbeam/controller.hpp"

#include <algorithm>

#include "hetbeam/errors.hpp"

namespace hetbeam {

void ControllerConfig::validate() const {
  if (!(beamwidth_deg > 0.0 && beamwidth_deg < 180.0)) {
    throw InvalidParameter("controller beamwidth must be in (0, 180)");
  }
  if (!(change_threshold_m >= 0.0)) throw InvalidParameter("change threshold must be >= 0");
  if (!(edge_tolerance_deg >= 0.0)) throw InvalidParameter("edge tolerance must be >= 0");
}

BeamController::BeamController(ControllerConfig config) : config_(config) { config_.validate(); }

void BeamController::on_beacon(const BeaconRecord& beacon) {
  if (last_timestamp_ && beacon.timestamp < *last_timestamp_) {
    throw InvalidParameter("beacon timestamps must be monotone");
  }
  last_timestamp_ = beacon.timestamp;
  if (!anchor_ || distance(beacon.est_pos, anchor_->est_pos) > config_.change_threshold_m) {
    anchor_ = beacon;
  }
}

Vec2 BeamController::tracked_position(double now) const {
  if (!anchor_) throw InvalidParameter("no beacon received yet");
  VehicleState s;
  s.pos = anchor_->est_pos;
  s.speed = anchor_->speed;
  s.heading_deg = anchor_->heading_deg;
  s.yaw_rate_dps = anchor_->yaw_rate_dps;
  const double dt = now - anchor_->timestamp;
  return dt > 0.0 ? predict_position(s, dt).pos : s.pos;
}

std::optional<BeamConfig> BeamController::step(double now) {
  if (!anchor_) return std::nullopt;
  const Vec2 tracked = tracked_position(now);
  if (beam_ && beam_->covers(tracked, config_.edge_tolerance_deg)) return beam_;

  BeamConfig beam;
  beam.rsu_pos = config_.rsu_pos;
  beam.beamwidth_deg = config_.beamwidth_deg;
  if (tracked == config_.rsu_pos) {
    beam.steer_angle_deg = beam_ ? beam_->steer_angle_deg : 0.0;
  } else {
    // angular sense of travel around the RSU decides which edge leads
    const double dt = std::max(0.0, now - anchor_->timestamp);
    const double bearing = anchor_->heading_deg + 2.0 * anchor_->yaw_rate_dps * dt;
    const Vec2 velocity = anchor_->speed * unit_from_bearing_deg(bearing);
    const double sense = cross(tracked - config_.rsu_pos, velocity);
    const double lead = sense > 0.0 ? 1.0 : (sense < 0.0 ? -1.0 : 0.0);
    beam.steer_angle_deg =
        normalize_deg(steer_to(tracked, config_.rsu_pos) + lead * 0.5 * config_.beamwidth_deg);
  }
  beam_ = beam;
  ++beam_index_;
  return beam_;
}

}  // namespace hetbeam
