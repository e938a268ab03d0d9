#pragma once

// RSU-side beam geometry and the per-beam data-rate model.
//
// The analytic model projects the vehicle's movement inside one beam onto a
// straight line with an along-track coordinate. Positions along the line are
// metres, times are seconds since the vehicle passed the reference point P_0
// (origin_along). Beam i is scheduled over [t_i, t_{i+1}]; under a position
// error e the vehicle is inside the steered footprint over
// [t^_i, t^_{i+1}], with
//
//   t^ = sign(q + x_e) * sqrt((q + x_e)^2 + y_e^2) / v,   q = P - P_0,
//
// and data only flows on the overlap of the two windows.

#include <functional>
#include <optional>

#include "hetbeam/geometry.hpp"
#include "hetbeam/quadrature.hpp"
#include "hetbeam/rf_link.hpp"
#include "hetbeam/stochastic.hpp"

namespace hetbeam {

/// Steering angle (math convention, counter-clockwise from +x, which is the
/// road axis) and half-power beamwidth of an RSU beam.
struct BeamConfig {
  double steer_angle_deg = 0.0;
  double beamwidth_deg = 10.0;
  Vec2 rsu_pos;

  /// True iff the bearing from the RSU to `p` lies within steer +- theta/2.
  bool covers(Vec2 p, double tolerance_deg = 1e-7) const;
};

/// Angle from `rsu_pos` to `est_pos` in [0, 360). Throws InvalidParameter on
/// coincident points.
double steer_to(Vec2 est_pos, Vec2 rsu_pos);

struct AlignmentInterval {
  double t_start = 0.0;
  double t_end = 0.0;
  int beam_index = -1;  ///< -1 while no beam is trained/steered
  bool outage = true;
  double mean_snr_db = 0.0;  ///< time-averaged over the interval; 0 for outage
  double bits = 0.0;

  double duration() const { return t_end - t_start; }
};

/// Straight pass of a vehicle past an RSU.
struct PassGeometry {
  double rsu_offset = 5.0;     ///< perpendicular RSU-to-line distance, m
  double rsu_along = 20.0;     ///< along-track coordinate of the RSU foot
  double origin_along = 20.0;  ///< P_0
  double speed = 14.0;         ///< m/s

  void validate() const;
  double along_at(double t) const { return origin_along + speed * t; }
  double time_at(double along) const { return (along - origin_along) / speed; }
  double distance_at(double t) const;
};

/// Along-track extent [P_i, P_{i+1}] of a beam of width theta whose
/// boresight crosses the line at `center_along`.
struct BeamFootprint {
  double start_along = 0.0;
  double end_along = 0.0;

  double length() const { return end_along - start_along; }
};

/// Throws InvalidParameter if an edge ray does not reach the line.
BeamFootprint beam_footprint(const PassGeometry& geometry, double center_along,
                             double beamwidth_deg);

struct AlignmentTimes {
  double t_i = 0.0;
  double t_next = 0.0;
  double t_hat_i = 0.0;
  double t_hat_next = 0.0;
  double start = 0.0;  ///< max(t_i, t^_i)
  double end = 0.0;    ///< min(t_{i+1}, t^_{i+1}); equals start on outage
  bool outage = false;
};

/// Time at which the vehicle reaches the error-shifted image of `edge_along`.
double shifted_time(const PassGeometry& geometry, double edge_along, PositionError error);

/// Error-free and shifted alignment instants and their overlap. Empty overlap
/// is total misalignment (outage).
AlignmentTimes alignment_times(const PassGeometry& geometry, const BeamFootprint& footprint,
                               PositionError error);

/// c(t) = B log2(1 + SNR(d(t))), the instantaneous capacity.
double capacity_at(double distance_m, double beamwidth_deg, const rf::LinkParams& link,
                   double shadowing_db = 0.0);

/// Integral of c(t) over [t0, t1] for an arbitrary range profile d(t).
/// Throws QuadratureFailure if the adaptive rule cannot meet its tolerance.
double integrate_capacity(const std::function<double(double)>& distance_of_t, double t0,
                          double t1, double beamwidth_deg, const rf::LinkParams& link,
                          double shadowing_db = 0.0, const quad::SimpsonOptions& options = {});

struct DataRate {
  double bits = 0.0;
  double mean_bps = 0.0;  ///< bits over the scheduled interval length
};

/// Bits delivered by one beam: integral of c(t) over the aligned part of the
/// interval; an outage interval delivers nothing.
DataRate beam_data_rate(const AlignmentInterval& interval, double beamwidth_deg,
                        const rf::LinkParams& link,
                        const std::function<double(double)>& distance_of_t,
                        double shadowing_db = 0.0);

/// Same, for the analytic straight-pass model.
DataRate beam_data_rate(const AlignmentTimes& times, double beamwidth_deg,
                        const rf::LinkParams& link, const PassGeometry& geometry,
                        double shadowing_db = 0.0);

struct StraightTrajectory {
  Vec2 point;
  Vec2 direction;  ///< need not be normalised
};

/// Time a vehicle moving at `speed` along `trajectory` spends inside the beam
/// cone: chord length inside the cone over speed. Zero without intersection,
/// +inf when the line runs inside the cone indefinitely. Requires
/// beamwidth < 180.
double coverage_interval(const BeamConfig& beam, const StraightTrajectory& trajectory,
                         double speed);

}  // namespace hetbeam
