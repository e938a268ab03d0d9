#include "hetbeam/config_io.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

#include "hetbeam/errors.hpp"

namespace hetbeam {

namespace {

using nlohmann::json;

[[noreturn]] void invalid(const std::string& path, const std::string& what) {
  throw ConfigError(ConfigError::Kind::validation, path, path + ": " + what);
}

// One JSON object being read: typed getters, nested sections, and a final
// check that every key was recognised.
class Section {
 public:
  Section(const json& node, std::string path) : node_(node), path_(std::move(path)) {
    if (!node_.is_object()) invalid(path_.empty() ? "<root>" : path_, "must be an object");
  }

  std::string key_path(const char* key) const { return path_.empty() ? key : path_ + "." + key; }

  const json* find(const char* key) {
    seen_.insert(key);
    auto it = node_.find(key);
    return it == node_.end() ? nullptr : &*it;
  }

  void number(const char* key, double& out) {
    if (const json* v = find(key)) {
      if (!v->is_number()) invalid(key_path(key), "expected a number");
      out = v->get<double>();
    }
  }

  void integer(const char* key, int& out) {
    if (const json* v = find(key)) {
      if (!v->is_number_integer()) invalid(key_path(key), "expected an integer");
      const auto x = v->get<long long>();
      if (x < std::numeric_limits<int>::min() || x > std::numeric_limits<int>::max()) {
        invalid(key_path(key), "integer out of range");
      }
      out = static_cast<int>(x);
    }
  }

  void count(const char* key, std::size_t& out) {
    if (const json* v = find(key)) {
      if (!v->is_number_unsigned()) invalid(key_path(key), "expected a non-negative integer");
      out = v->get<std::size_t>();
    }
  }

  void seed(const char* key, std::uint64_t& out) {
    if (const json* v = find(key)) {
      if (!v->is_number_unsigned()) invalid(key_path(key), "expected a non-negative integer");
      out = v->get<std::uint64_t>();
    }
  }

  void boolean(const char* key, bool& out) {
    if (const json* v = find(key)) {
      if (!v->is_boolean()) invalid(key_path(key), "expected true or false");
      out = v->get<bool>();
    }
  }

  void numbers(const char* key, std::vector<double>& out) {
    if (const json* v = find(key)) {
      if (!v->is_array()) invalid(key_path(key), "expected an array of numbers");
      std::vector<double> xs;
      for (const auto& e : *v) {
        if (!e.is_number()) invalid(key_path(key), "expected an array of numbers");
        xs.push_back(e.get<double>());
      }
      out = std::move(xs);
    }
  }

  void scheme(const char* key, Scheme& out) {
    if (const json* v = find(key)) out = parse_scheme(*v, key_path(key));
  }

  void schemes(const char* key, std::vector<Scheme>& out) {
    if (const json* v = find(key)) {
      if (!v->is_array()) invalid(key_path(key), "expected an array of scheme names");
      std::vector<Scheme> xs;
      for (const auto& e : *v) xs.push_back(parse_scheme(e, key_path(key)));
      out = std::move(xs);
    }
  }

  /// Nested object; absent keys read as an empty object.
  template <class F>
  void section(const char* key, F&& read) {
    static const json kEmpty = json::object();
    const json* v = find(key);
    Section child(v ? *v : kEmpty, key_path(key));
    read(child);
    child.finish();
  }

  void finish() const {
    for (const auto& [key, value] : node_.items()) {
      if (!seen_.contains(key)) invalid(path_.empty() ? key : path_ + "." + key, "unknown key");
    }
  }

 private:
  static Scheme parse_scheme(const json& v, const std::string& path) {
    if (!v.is_string()) invalid(path, "expected \"proposed\" or \"baseline\"");
    try {
      return scheme_from_string(v.get<std::string>());
    } catch (const InvalidParameter&) {
      invalid(path, "expected \"proposed\" or \"baseline\"");
    }
  }

  const json& node_;
  std::string path_;
  std::set<std::string, std::less<>> seen_;
};

void read_config(Section& root, ScenarioConfig& c) {
  root.seed("seed", c.seed);
  root.scheme("scheme", c.scheme);
  root.number("horizon_s", c.horizon);
  root.number("time_step_s", c.time_step);

  root.section("mobility", [&](Section& s) {
    auto& m = c.mobility;
    s.number("v_avg_mps", m.v_avg);
    s.number("speed_variance_m2ps2", m.speed_variance);
    s.integer("lane_count", m.lane_count);
    s.number("lane_width_m", m.lane_width);
    s.number("road_block_length_m", m.road_block_length);
    s.integer("start_lane", m.start_lane);
    s.number("maneuver_interval_s", m.maneuver_interval);
    s.number("maneuver_yaw_sigma_dps", m.maneuver_yaw_sigma);
  });
  root.section("geometry", [&](Section& s) {
    s.number("rsu_x_m", c.geometry.rsu_x);
    s.number("rsu_y_m", c.geometry.rsu_y);
    s.number("beam_center_offset_m", c.geometry.beam_center_offset);
  });
  root.section("link", [&](Section& s) {
    auto& l = c.link;
    s.number("carrier_hz", l.carrier_hz);
    s.number("bandwidth_hz", l.bandwidth_hz);
    s.number("pathloss_exp", l.pathloss_exp);
    s.number("atm_att_db_per_km", l.atm_att_db_per_km);
    s.number("rain_att_db_per_km", l.rain_att_db_per_km);
    s.number("channel_att_db", l.channel_att_db);
    s.number("p_tx_dbm", l.p_tx_dbm);
    s.number("noise_floor_dbm_per_hz", l.noise_floor_dbm);
    s.number("noise_figure_db", l.noise_figure_db);
  });
  root.section("gps", [&](Section& s) {
    s.number("mu_m", c.gps.mu);
    s.number("sigma_m", c.gps.sigma);
    s.number("beacon_loss_probability", c.gps.beacon_loss_probability);
  });
  root.section("shadowing", [&](Section& s) { s.number("sigma_db", c.shadowing.sigma_db); });
  root.section("timings", [&](Section& s) {
    auto& t = c.timings;
    s.number("t_tx_ssw_s", t.t_tx_ssw);
    s.number("t_rx_ssw_s", t.t_rx_ssw);
    s.number("t_ssw_fb_ack_s", t.t_ssw_fb_ack);
    s.number("t_brp_s", t.t_brp);
    s.number("t_brp_fb_ack_s", t.t_brp_fb_ack);
    s.number("t_sbifs_s", t.t_sbifs);
    s.number("t_mbifs_s", t.t_mbifs);
    s.number("t_sifs_s", t.t_sifs);
  });
  root.section("topology", [&](Section& s) {
    s.integer("k_sectors", c.topo.k_sectors);
    s.integer("n_stations", c.topo.n_stations);
    s.integer("s_combinations", c.topo.s_combinations);
    s.integer("abft_slots", c.abft_slots);
  });
  if (const json* rows = root.find("mcs")) {
    const std::string path = root.key_path("mcs");
    if (!rows->is_array()) invalid(path, "expected an array of rows");
    std::vector<rf::McsRow> table;
    for (const auto& row : *rows) {
      Section s(row, path);
      rf::McsRow r;
      s.number("min_snr_db", r.min_snr_db);
      s.number("rate_bps", r.rate_bps);
      s.finish();
      table.push_back(r);
    }
    try {
      c.mcs = rf::McsTable(std::move(table));
    } catch (const InvalidParameter& e) {
      invalid(path, e.what());
    }
  }
  root.section("cadences", [&](Section& s) {
    s.number("dsrc_beacon_s", c.cadences.dsrc_beacon);
    s.number("gps_update_s", c.cadences.gps_update);
    s.number("bi_s", c.cadences.bi);
  });
  c.topo.bi_length = c.cadences.bi;
  root.section("beam", [&](Section& s) {
    s.boolean("adaptive", c.beam.adaptive);
    s.number("theta_deg", c.beam.theta_deg);
  });
  root.section("analysis", [&](Section& s) {
    auto& a = c.analysis;
    s.numbers("error_mus_m", a.error_mus);
    s.number("theta_min_deg", a.theta_min_deg);
    s.number("theta_max_deg", a.theta_max_deg);
    s.number("theta_step_deg", a.theta_step_deg);
    s.number("refine_tolerance_deg", a.refine_tolerance_deg);
    s.number("sensitivity_theta_deg", a.sensitivity_theta_deg);
    s.numbers("sensitivity_errors_m", a.sensitivity_errors_m);
  });
  root.section("sweep", [&](Section& s) {
    auto& w = c.sweep;
    s.numbers("error_mu_m", w.error_mu);
    s.numbers("velocity_mps", w.velocity);
    s.numbers("theta_deg", w.theta);
    s.schemes("schemes", w.schemes);
    s.integer("replications", w.replications);
    s.count("max_cells", w.max_cells);
  });
}

int line_of(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<long>(byte), '\n'));
}

}  // namespace

ScenarioConfig parse_config(std::string_view text) {
  ScenarioConfig config;
  const bool blank = std::all_of(text.begin(), text.end(),
                                 [](char ch) { return std::isspace(static_cast<unsigned char>(ch)); });
  if (!blank) {
    json doc;
    try {
      doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
      // byte is one past the offending character
      const int line = line_of(text, e.byte == 0 ? 0 : e.byte - 1);
      throw ConfigError(ConfigError::Kind::parse, "",
                        "parse error at line " + std::to_string(line) + ": " + e.what(), line);
    }
    Section root(doc, "");
    read_config(root, config);
    root.finish();
  }
  config.validate();
  return config;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ConfigError(ConfigError::Kind::parse, "", "cannot read " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string to_json_text(const ScenarioConfig& c) {
  json j;
  j["seed"] = c.seed;
  j["scheme"] = std::string(to_string(c.scheme));
  j["horizon_s"] = c.horizon;
  j["time_step_s"] = c.time_step;
  const auto& m = c.mobility;
  j["mobility"] = {{"v_avg_mps", m.v_avg},
                   {"speed_variance_m2ps2", m.speed_variance},
                   {"lane_count", m.lane_count},
                   {"lane_width_m", m.lane_width},
                   {"road_block_length_m", m.road_block_length},
                   {"start_lane", m.start_lane},
                   {"maneuver_interval_s", m.maneuver_interval},
                   {"maneuver_yaw_sigma_dps", m.maneuver_yaw_sigma}};
  j["geometry"] = {{"rsu_x_m", c.geometry.rsu_x},
                   {"rsu_y_m", c.geometry.rsu_y},
                   {"beam_center_offset_m", c.geometry.beam_center_offset}};
  const auto& l = c.link;
  j["link"] = {{"carrier_hz", l.carrier_hz},
               {"bandwidth_hz", l.bandwidth_hz},
               {"pathloss_exp", l.pathloss_exp},
               {"atm_att_db_per_km", l.atm_att_db_per_km},
               {"rain_att_db_per_km", l.rain_att_db_per_km},
               {"channel_att_db", l.channel_att_db},
               {"p_tx_dbm", l.p_tx_dbm},
               {"noise_floor_dbm_per_hz", l.noise_floor_dbm},
               {"noise_figure_db", l.noise_figure_db}};
  j["gps"] = {{"mu_m", c.gps.mu},
              {"sigma_m", c.gps.sigma},
              {"beacon_loss_probability", c.gps.beacon_loss_probability}};
  j["shadowing"] = {{"sigma_db", c.shadowing.sigma_db}};
  const auto& t = c.timings;
  j["timings"] = {{"t_tx_ssw_s", t.t_tx_ssw},     {"t_rx_ssw_s", t.t_rx_ssw},
                  {"t_ssw_fb_ack_s", t.t_ssw_fb_ack}, {"t_brp_s", t.t_brp},
                  {"t_brp_fb_ack_s", t.t_brp_fb_ack}, {"t_sbifs_s", t.t_sbifs},
                  {"t_mbifs_s", t.t_mbifs},       {"t_sifs_s", t.t_sifs}};
  j["topology"] = {{"k_sectors", c.topo.k_sectors},
                   {"n_stations", c.topo.n_stations},
                   {"s_combinations", c.topo.s_combinations},
                   {"abft_slots", c.abft_slots}};
  if (c.mcs) {
    json rows = json::array();
    for (const auto& r : c.mcs->rows()) {
      rows.push_back({{"min_snr_db", r.min_snr_db}, {"rate_bps", r.rate_bps}});
    }
    j["mcs"] = rows;
  }
  j["cadences"] = {{"dsrc_beacon_s", c.cadences.dsrc_beacon},
                   {"gps_update_s", c.cadences.gps_update},
                   {"bi_s", c.cadences.bi}};
  j["beam"] = {{"adaptive", c.beam.adaptive}, {"theta_deg", c.beam.theta_deg}};
  const auto& a = c.analysis;
  j["analysis"] = {{"error_mus_m", a.error_mus},
                   {"theta_min_deg", a.theta_min_deg},
                   {"theta_max_deg", a.theta_max_deg},
                   {"theta_step_deg", a.theta_step_deg},
                   {"refine_tolerance_deg", a.refine_tolerance_deg},
                   {"sensitivity_theta_deg", a.sensitivity_theta_deg},
                   {"sensitivity_errors_m", a.sensitivity_errors_m}};
  json schemes = json::array();
  for (Scheme s : c.sweep.schemes) schemes.push_back(std::string(to_string(s)));
  j["sweep"] = {{"error_mu_m", c.sweep.error_mu},
                {"velocity_mps", c.sweep.velocity},
                {"theta_deg", c.sweep.theta},
                {"schemes", schemes},
                {"replications", c.sweep.replications},
                {"max_cells", c.sweep.max_cells}};
  return j.dump(2) + "\n";
}

void save_config(const ScenarioConfig& config, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << to_json_text(config);
}

}  // namespace hetbeam
