#include "hetbeam/config.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hetbeam/errors.hpp"

namespace hetbeam {

std::string_view to_string(Scheme scheme) {
  return scheme == Scheme::proposed ? "proposed" : "baseline";
}

Scheme scheme_from_string(std::string_view text) {
  if (text == "proposed") return Scheme::proposed;
  if (text == "baseline") return Scheme::baseline;
  throw InvalidParameter("unknown scheme '" + std::string(text) + "'");
}

std::vector<double> AnalysisSettings::theta_grid() const {
  return analysis::default_theta_grid(theta_min_deg, theta_max_deg, theta_step_deg);
}

namespace {

void require(bool ok, const char* path, const std::string& what) {
  if (!ok) throw ConfigError(ConfigError::Kind::validation, path, std::string(path) + ": " + what);
}

// Runs a module's own validator and re-labels its message with a key path.
template <class F>
void delegate(const char* path, F&& check) {
  try {
    check();
  } catch (const InvalidParameter& e) {
    throw ConfigError(ConfigError::Kind::validation, path, std::string(path) + ": " + e.what());
  }
}

bool finite_positive(double v) { return std::isfinite(v) && v > 0.0; }

}  // namespace

void ScenarioConfig::validate() const {
  require(horizon >= 0.0 && std::isfinite(horizon), "horizon_s", "must be finite and >= 0");
  require(finite_positive(time_step), "time_step_s", "must be > 0");

  const auto& m = mobility;
  require(finite_positive(m.v_avg), "mobility.v_avg_mps", "must be > 0");
  require(m.speed_variance >= 0.0 && std::isfinite(m.speed_variance),
          "mobility.speed_variance_m2ps2", "must be >= 0");
  require(m.lane_count >= 1, "mobility.lane_count", "must be >= 1");
  require(finite_positive(m.lane_width), "mobility.lane_width_m", "must be > 0");
  require(finite_positive(m.road_block_length), "mobility.road_block_length_m", "must be > 0");
  require(m.start_lane >= 0 && m.start_lane < m.lane_count, "mobility.start_lane",
          "must index an existing lane");
  require(finite_positive(m.maneuver_interval), "mobility.maneuver_interval_s", "must be > 0");
  require(m.maneuver_yaw_sigma >= 0.0, "mobility.maneuver_yaw_sigma_dps", "must be >= 0");

  require(std::isfinite(geometry.rsu_x), "geometry.rsu_x_m", "must be finite");
  require(std::isfinite(geometry.rsu_y), "geometry.rsu_y_m", "must be finite");
  require(std::isfinite(geometry.beam_center_offset), "geometry.beam_center_offset_m",
          "must be finite");
  require(std::abs(m.lane_center(m.start_lane) - geometry.rsu_y) > 0.0, "geometry.rsu_y_m",
          "RSU must not sit on the start lane centre line");

  const auto& l = link;
  require(finite_positive(l.carrier_hz), "link.carrier_hz", "must be > 0");
  require(finite_positive(l.bandwidth_hz), "link.bandwidth_hz", "must be > 0");
  require(finite_positive(l.pathloss_exp), "link.pathloss_exp", "must be > 0");
  require(l.atm_att_db_per_km >= 0.0, "link.atm_att_db_per_km", "must be >= 0");
  require(l.rain_att_db_per_km >= 0.0, "link.rain_att_db_per_km", "must be >= 0");
  require(std::isfinite(l.channel_att_db), "link.channel_att_db", "must be finite");
  require(std::isfinite(l.p_tx_dbm), "link.p_tx_dbm", "must be finite");
  require(std::isfinite(l.noise_floor_dbm), "link.noise_floor_dbm_per_hz", "must be finite");
  require(std::isfinite(l.noise_figure_db), "link.noise_figure_db", "must be finite");

  require(gps.mu >= 0.0 && std::isfinite(gps.mu), "gps.mu_m", "must be >= 0");
  require(gps.mu == 0.0 || finite_positive(gps.sigma), "gps.sigma_m",
          "must be > 0 when the error is enabled");
  require(gps.beacon_loss_probability >= 0.0 && gps.beacon_loss_probability <= 1.0,
          "gps.beacon_loss_probability", "must lie in [0, 1]");
  require(shadowing.sigma_db >= 0.0 && std::isfinite(shadowing.sigma_db), "shadowing.sigma_db",
          "must be >= 0");

  delegate("timings", [&] { timings.validate(); });
  require(topo.k_sectors >= 1, "topology.k_sectors", "must be >= 1");
  require(topo.n_stations >= 0, "topology.n_stations", "must be >= 0");
  require(topo.s_combinations >= 1, "topology.s_combinations", "must be >= 1");
  require(abft_slots >= 4 && abft_slots <= 8, "topology.abft_slots", "must lie in [4, 8]");

  require(finite_positive(cadences.dsrc_beacon), "cadences.dsrc_beacon_s", "must be > 0");
  require(finite_positive(cadences.gps_update), "cadences.gps_update_s", "must be > 0");
  require(finite_positive(cadences.bi) && cadences.bi <= 1.0, "cadences.bi_s",
          "must lie in (0, 1]");
  require(topo.bi_length == cadences.bi, "cadences.bi_s", "must equal the topology BI length");

  require(beam.theta_deg > 0.0 && beam.theta_deg < 180.0, "beam.theta_deg",
          "must lie in (0, 180)");

  const auto& a = analysis;
  require(a.theta_min_deg > 0.0 && a.theta_max_deg > a.theta_min_deg && a.theta_max_deg < 180.0,
          "analysis.theta_max_deg", "need 0 < theta_min < theta_max < 180");
  require(finite_positive(a.theta_step_deg), "analysis.theta_step_deg", "must be > 0");
  require(a.theta_grid().size() >= 3, "analysis.theta_step_deg", "grid needs >= 3 points");
  require(finite_positive(a.refine_tolerance_deg), "analysis.refine_tolerance_deg",
          "must be > 0");
  require(a.sensitivity_theta_deg > 0.0 && a.sensitivity_theta_deg < 180.0,
          "analysis.sensitivity_theta_deg", "must lie in (0, 180)");
  for (double mu : a.error_mus) require(finite_positive(mu), "analysis.error_mus_m", "must be > 0");
  for (double e : a.sensitivity_errors_m) {
    require(finite_positive(e), "analysis.sensitivity_errors_m", "must be > 0");
  }

  const auto& s = sweep;
  require(!s.error_mu.empty(), "sweep.error_mu_m", "must not be empty");
  require(!s.velocity.empty(), "sweep.velocity_mps", "must not be empty");
  require(!s.schemes.empty(), "sweep.schemes", "must not be empty");
  for (double mu : s.error_mu) require(mu >= 0.0 && std::isfinite(mu), "sweep.error_mu_m", "must be >= 0");
  for (double v : s.velocity) require(finite_positive(v), "sweep.velocity_mps", "must be > 0");
  for (double th : s.theta) {
    require(th > 0.0 && th < 180.0, "sweep.theta_deg", "must lie in (0, 180)");
  }
  require(s.replications >= 1, "sweep.replications", "must be >= 1");
  const std::size_t cells = s.error_mu.size() * s.velocity.size() *
                            std::max<std::size_t>(1, s.theta.size()) * s.schemes.size();
  require(cells <= s.max_cells, "sweep.max_cells", "grid exceeds the cell cap");
}

rf::McsTable ScenarioConfig::mcs_table() const {
  return mcs ? *mcs : rf::McsTable::ieee80211ad_single_carrier(link);
}

analysis::AnalysisGeometry ScenarioConfig::analysis_geometry(double speed) const {
  analysis::AnalysisGeometry g;
  g.rsu_offset = std::abs(mobility.lane_center(mobility.start_lane) - geometry.rsu_y);
  g.rsu_along = geometry.rsu_x;
  g.origin_along = geometry.rsu_x;
  g.beam_center_along = geometry.rsu_x + geometry.beam_center_offset;
  g.speed = speed;
  g.link = link;
  return g;
}

std::optional<GpsErrorModel> ScenarioConfig::error_model() const {
  if (!gps.enabled()) return std::nullopt;
  return gps.model();
}

}  // namespace hetbeam
