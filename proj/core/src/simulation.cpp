#include "hetbeam/simulation.hpp"

#include <algorithm>
#include <cmath>

#include "hetbeam/analysis.hpp"
#include "hetbeam/controller.hpp"
#include "hetbeam/errors.hpp"
#include "hetbeam/overhead.hpp"
#include "hetbeam/rf_link.hpp"
#include "hetbeam/stochastic.hpp"

namespace hetbeam {

namespace {

enum Stream : std::uint64_t { kMotion = 1, kGps, kBeaconLoss, kShadowing, kAbft };

// Merges consecutive pieces with the same beam and state into one interval.
class Ledger {
 public:
  void add(double t0, double t1, int beam, bool outage, double snr_db, double bits) {
    if (!(t1 > t0)) return;
    if (!rows_.empty()) {
      auto& last = rows_.back();
      if (last.beam_index == beam && last.outage == outage && last.t_end == t0) {
        last.t_end = t1;
        last.bits += bits;
        snr_time_.back() += outage ? 0.0 : snr_db * (t1 - t0);
        return;
      }
    }
    rows_.push_back({t0, t1, beam, outage, 0.0, bits});
    snr_time_.push_back(outage ? 0.0 : snr_db * (t1 - t0));
  }

  std::vector<AlignmentInterval> finish() {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (!rows_[i].outage) rows_[i].mean_snr_db = snr_time_[i] / rows_[i].duration();
    }
    return std::move(rows_);
  }

 private:
  std::vector<AlignmentInterval> rows_;
  std::vector<double> snr_time_;
};

long steps_per(double period, double dt) {
  return std::max<long>(1, std::lround(period / dt));
}

}  // namespace

double resolve_beamwidth(const ScenarioConfig& config) {
  config.validate();
  if (!config.beam.adaptive) return config.beam.theta_deg;
  const auto opt = analysis::optimize_beamwidth(
      config.error_model(), config.analysis_geometry(config.mobility.v_avg),
      config.analysis.theta_grid(), config.analysis.refine_tolerance_deg);
  return opt.theta_star_deg;
}

ScenarioResult run_scenario(const ScenarioConfig& config, std::uint64_t seed,
                            const RunOptions& options) {
  config.validate();
  if (options.theta_deg && !(*options.theta_deg > 0.0 && *options.theta_deg < 180.0)) {
    throw InvalidParameter("beamwidth override must lie in (0, 180)");
  }

  Rng motion_rng(Rng::derive_seed(seed, kMotion));
  Rng gps_rng(Rng::derive_seed(seed, kGps));
  Rng loss_rng(Rng::derive_seed(seed, kBeaconLoss));
  Rng shadow_rng(Rng::derive_seed(seed, kShadowing));
  Rng abft_rng(Rng::derive_seed(seed, kAbft));

  const auto& mob = config.mobility;
  const rf::McsTable mcs = config.mcs_table();
  const Vec2 rsu = config.rsu_position();
  const RoadBounds road{0.0, mob.road_width()};
  const double dt = config.time_step;

  ScenarioResult res;
  res.scheme = config.scheme;
  res.seed = seed;
  res.speed = draw_speed(mob, motion_rng);
  res.horizon = config.horizon > 0.0 ? config.horizon
                                     : (res.speed > 0.0 ? mob.road_block_length / res.speed
                                                        : mob.road_block_length / mob.v_avg);

  const bool baseline = config.scheme == Scheme::baseline;
  const double sector_width = 360.0 / config.topo.k_sectors;
  if (baseline) {
    res.theta_deg = sector_width;
  } else {
    res.theta_deg = options.theta_deg ? *options.theta_deg : resolve_beamwidth(config);
  }

  const long n_steps = std::max<long>(1, std::lround(std::ceil(res.horizon / dt - 1e-9)));
  const long beacon_every = steps_per(config.cadences.dsrc_beacon, dt);
  const long gps_every = steps_per(config.cadences.gps_update, dt);
  const long maneuver_every = steps_per(mob.maneuver_interval, dt);
  const long bi_every = steps_per(config.cadences.bi, dt);

  const double training = overhead::total_beamforming_time(config.timings, config.topo);
  if (baseline) res.overhead_fraction = overhead::overhead_fraction(config.timings, config.topo);

  VehicleState truth;
  truth.pos = {0.0, mob.lane_center(mob.start_lane)};
  truth.speed = res.speed;
  truth.heading_deg = 90.0;

  PositionError gps_error;
  BeamController controller(ControllerConfig{rsu, baseline ? sector_width : res.theta_deg});

  Ledger ledger;
  std::optional<BeamConfig> beam;
  int beam_index = -1;
  double shadow_db = 0.0;
  double training_end = 0.0;
  int trainings = 0;

  for (long k = 0; k < n_steps; ++k) {
    const double t0 = static_cast<double>(k) * dt;
    const double t1 = k + 1 == n_steps ? res.horizon : static_cast<double>(k + 1) * dt;
    if (!(t1 > t0)) break;

    if (k > 0 && k % maneuver_every == 0) {
      truth.yaw_rate_dps = draw_maneuver_yaw(mob, motion_rng);
    }
    if (k % gps_every == 0 && config.gps.enabled()) {
      gps_error = sample_position_error(config.gps.model(), gps_rng);
    }

    if (!baseline) {
      if (k % beacon_every == 0 && !beacon_lost(config.gps.beacon_loss_probability, loss_rng)) {
        controller.on_beacon(BeaconRecord{truth.pos + Vec2{gps_error.x_e, gps_error.y_e},
                                          truth.speed, truth.heading_deg, truth.yaw_rate_dps,
                                          t0});
      }
      beam = controller.step(t0);
      if (controller.beam_index() != beam_index) {
        beam_index = controller.beam_index();
        shadow_db = sample_shadowing_db(config.shadowing, shadow_rng);
      }
    } else if (k % bi_every == 0) {
      training_end = t0 + training;
      bool collided = false;
      if (config.topo.n_stations >= 2) {
        std::vector<int> slots(static_cast<std::size_t>(config.topo.n_stations));
        for (int& s : slots) s = abft_rng.uniform_int(0, config.abft_slots - 1);
        collided = std::count(slots.begin(), slots.end(), slots[0]) > 1;
      }
      if (collided) {
        ++res.lost_trainings;
        beam.reset();
        beam_index = -1;
      } else {
        // the sweep picks the quantised sector holding the vehicle
        const double bearing = steer_to(truth.pos, rsu);
        const double sector = std::floor(bearing / sector_width);
        beam = BeamConfig{(sector + 0.5) * sector_width, sector_width, rsu};
        beam_index = trainings++;
        shadow_db = sample_shadowing_db(config.shadowing, shadow_rng);
      }
    }

    double data_start = t0;
    if (baseline && training_end > t0) {
      const double cut = std::min(training_end, t1);
      ledger.add(t0, cut, -1, true, 0.0, 0.0);
      data_start = cut;
    }
    if (t1 > data_start) {
      const double span = t1 - data_start;
      if (!beam) {
        ledger.add(data_start, t1, -1, true, 0.0, 0.0);
      } else {
        const double d = std::max(distance(truth.pos, rsu), 1e-3);
        const double snr = rf::snr_db(d, beam->beamwidth_deg, config.link, shadow_db);
        const double rate = rf::throughput_bps(snr, mcs);
        res.upper_bound_bits += rate * span;
        const bool aligned = beam->covers(truth.pos);
        const double bits = aligned ? rate * span : 0.0;
        res.total_bits += bits;
        ledger.add(data_start, t1, beam_index, !aligned, snr, bits);
      }
    }

    if (options.record_trajectory) {
      VehicleState snap = truth;
      snap.timestamp = t0;
      res.trajectory.push_back(snap);
    }
    truth = step_true_motion(truth, t1 - t0, std::nullopt, &road);
  }
  if (options.record_trajectory) res.trajectory.push_back(truth);

  res.intervals = ledger.finish();
  for (const auto& iv : res.intervals) {
    if (iv.outage) res.outage_time += iv.duration();
  }
  res.outage_fraction = res.outage_time / res.horizon;
  res.mean_throughput_bps = res.total_bits / res.horizon;
  res.realignments = baseline ? trainings : controller.beam_index() + 1;
  return res;
}

}  // namespace hetbeam
