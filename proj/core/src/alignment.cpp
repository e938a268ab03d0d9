#include "hetbeam/alignment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "hetbeam/errors.hpp"

namespace hetbeam {

bool BeamConfig::covers(Vec2 p, double tolerance_deg) const {
  const Vec2 d = p - rsu_pos;
  if (d.x == 0.0 && d.y == 0.0) return true;
  const double bearing = rad_to_deg(std::atan2(d.y, d.x));
  return std::abs(angle_diff_deg(bearing, steer_angle_deg)) <= 0.5 * beamwidth_deg + tolerance_deg;
}

double steer_to(Vec2 est_pos, Vec2 rsu_pos) {
  const Vec2 d = est_pos - rsu_pos;
  if (d.x == 0.0 && d.y == 0.0) throw InvalidParameter("cannot steer towards the RSU itself");
  return normalize_deg(rad_to_deg(std::atan2(d.y, d.x)));
}

void PassGeometry::validate() const {
  if (!(rsu_offset > 0.0)) throw InvalidParameter("rsu_offset must be > 0");
  if (!(speed > 0.0)) throw InvalidParameter("speed must be > 0");
  if (!std::isfinite(rsu_along) || !std::isfinite(origin_along)) {
    throw InvalidParameter("pass geometry coordinates must be finite");
  }
}

double PassGeometry::distance_at(double t) const {
  return std::hypot(rsu_offset, along_at(t) - rsu_along);
}

BeamFootprint beam_footprint(const PassGeometry& geometry, double center_along,
                             double beamwidth_deg) {
  geometry.validate();
  if (!(beamwidth_deg > 0.0 && beamwidth_deg < 180.0)) {
    throw InvalidParameter("beamwidth must be in (0, 180) for a footprint");
  }
  const double h = geometry.rsu_offset;
  const double center = std::atan2(center_along - geometry.rsu_along, h);
  const double half = 0.5 * deg_to_rad(beamwidth_deg);
  const double lo = center - half;
  const double hi = center + half;
  constexpr double kLimit = 0.5 * std::numbers::pi;
  if (!(lo > -kLimit && hi < kLimit)) {
    throw InvalidParameter("beam edge ray does not intersect the trajectory line");
  }
  return {geometry.rsu_along + h * std::tan(lo), geometry.rsu_along + h * std::tan(hi)};
}

double shifted_time(const PassGeometry& geometry, double edge_along, PositionError error) {
  const double q = edge_along - geometry.origin_along + error.x_e;
  const double r = std::hypot(q, error.y_e);
  return (q >= 0.0 ? r : -r) / geometry.speed;
}

AlignmentTimes alignment_times(const PassGeometry& geometry, const BeamFootprint& footprint,
                               PositionError error) {
  geometry.validate();
  if (!(footprint.end_along > footprint.start_along)) {
    throw InvalidParameter("footprint must have positive length");
  }
  AlignmentTimes a;
  a.t_i = geometry.time_at(footprint.start_along);
  a.t_next = geometry.time_at(footprint.end_along);
  a.t_hat_i = shifted_time(geometry, footprint.start_along, error);
  a.t_hat_next = shifted_time(geometry, footprint.end_along, error);
  a.start = std::max(a.t_i, a.t_hat_i);
  a.end = std::min(a.t_next, a.t_hat_next);
  if (!(a.end > a.start)) {
    a.outage = true;
    a.end = a.start;
  }
  return a;
}

double capacity_at(double distance_m, double beamwidth_deg, const rf::LinkParams& link,
                   double shadowing_db) {
  return rf::capacity_bps(rf::snr_db(distance_m, beamwidth_deg, link, shadowing_db),
                          link.bandwidth_hz);
}

double integrate_capacity(const std::function<double(double)>& distance_of_t, double t0,
                          double t1, double beamwidth_deg, const rf::LinkParams& link,
                          double shadowing_db, const quad::SimpsonOptions& options) {
  if (!(t1 >= t0)) throw InvalidParameter("integration interval must satisfy t0 <= t1");
  if (t1 == t0) return 0.0;
  // the link constants do not depend on t; fold them once
  const double fixed_db = link.p_tx_dbm + 2.0 * rf::gain_dbi(beamwidth_deg) - shadowing_db -
                          link.channel_att_db - rf::noise_power_dbm(link);
  const double att_per_m = (link.atm_att_db_per_km + link.rain_att_db_per_km) / 1000.0;
  const double ten_n = 10.0 * link.pathloss_exp;
  const double bandwidth = link.bandwidth_hz;
  auto integrand = [&](double t) {
    const double d = distance_of_t(t);
    if (!(d > 0.0)) throw InvalidParameter("distance must be > 0");
    const double snr = fixed_db - ten_n * std::log10(d) - att_per_m * d;
    return bandwidth * std::log2(1.0 + std::pow(10.0, snr / 10.0));
  };
  return quad::adaptive_simpson(integrand, t0, t1, options);
}

DataRate beam_data_rate(const AlignmentInterval& interval, double beamwidth_deg,
                        const rf::LinkParams& link,
                        const std::function<double(double)>& distance_of_t,
                        double shadowing_db) {
  if (!(interval.t_end >= interval.t_start)) throw InvalidParameter("interval end before start");
  DataRate r;
  if (interval.outage || interval.t_end == interval.t_start) return r;
  r.bits = integrate_capacity(distance_of_t, interval.t_start, interval.t_end, beamwidth_deg,
                              link, shadowing_db);
  r.mean_bps = r.bits / interval.duration();
  return r;
}

DataRate beam_data_rate(const AlignmentTimes& times, double beamwidth_deg,
                        const rf::LinkParams& link, const PassGeometry& geometry,
                        double shadowing_db) {
  DataRate r;
  const double scheduled = times.t_next - times.t_i;
  if (times.outage || !(times.end > times.start)) return r;
  r.bits = integrate_capacity([&](double t) { return geometry.distance_at(t); }, times.start,
                              times.end, beamwidth_deg, link, shadowing_db);
  r.mean_bps = scheduled > 0.0 ? r.bits / scheduled : 0.0;
  return r;
}

double coverage_interval(const BeamConfig& beam, const StraightTrajectory& trajectory,
                         double speed) {
  if (!(speed > 0.0)) throw InvalidParameter("speed must be > 0");
  if (!(beam.beamwidth_deg > 0.0 && beam.beamwidth_deg < 180.0)) {
    throw InvalidParameter("coverage needs a beamwidth in (0, 180)");
  }
  const double dir_norm = trajectory.direction.norm();
  if (!(dir_norm > 0.0)) throw InvalidParameter("trajectory direction must be non-zero");
  const Vec2 dir = (1.0 / dir_norm) * trajectory.direction;

  // The cone is the intersection of two half-planes through the RSU:
  // cross(u1, q) >= 0 and cross(q, u2) >= 0, with q = p - rsu and u1/u2 the
  // edge directions. Along p(s) = p0 + s * dir each is affine in s.
  const Vec2 u1 = unit_from_angle_deg(beam.steer_angle_deg - 0.5 * beam.beamwidth_deg);
  const Vec2 u2 = unit_from_angle_deg(beam.steer_angle_deg + 0.5 * beam.beamwidth_deg);
  const Vec2 q0 = trajectory.point - beam.rsu_pos;

  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  auto clip = [&](double c0, double c1) {
    // c0 + c1 * s >= 0
    if (c1 == 0.0) {
      if (c0 < 0.0) {
        lo = 1.0;
        hi = 0.0;
      }
      return;
    }
    const double s = -c0 / c1;
    if (c1 > 0.0) lo = std::max(lo, s);
    else hi = std::min(hi, s);
  };
  clip(cross(u1, q0), cross(u1, dir));
  clip(cross(q0, u2), cross(dir, u2));
  if (!(hi > lo)) return 0.0;
  return (hi - lo) / speed;
}

}  // namespace hetbeam
