#include "hetbeam/rf_link.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hetbeam/errors.hpp"

namespace hetbeam::rf {

void LinkParams::validate() const {
  if (!(carrier_hz > 0.0)) throw InvalidParameter("link.carrier_hz must be > 0");
  if (!(bandwidth_hz > 0.0)) throw InvalidParameter("link.bandwidth_hz must be > 0");
  if (!(pathloss_exp > 0.0)) throw InvalidParameter("link.pathloss_exp must be > 0");
  if (!(atm_att_db_per_km >= 0.0)) throw InvalidParameter("link.atm_att_db_per_km must be >= 0");
  if (!(rain_att_db_per_km >= 0.0)) {
    throw InvalidParameter("link.rain_att_db_per_km must be >= 0");
  }
  for (double v : {channel_att_db, p_tx_dbm, noise_floor_dbm, noise_figure_db}) {
    if (!std::isfinite(v)) throw InvalidParameter("link parameters must be finite");
  }
}

McsTable::McsTable(std::vector<McsRow> rows) : rows_(std::move(rows)) {
  if (rows_.empty()) throw InvalidParameter("MCS table must have at least one row");
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (!std::isfinite(rows_[i].min_snr_db) || !(rows_[i].rate_bps > 0.0)) {
      throw InvalidParameter("MCS rows need a finite threshold and a positive rate");
    }
    if (i > 0 && !(rows_[i].min_snr_db > rows_[i - 1].min_snr_db &&
                   rows_[i].rate_bps > rows_[i - 1].rate_bps)) {
      throw InvalidParameter("MCS rows must be strictly increasing in threshold and rate");
    }
  }
}

McsTable McsTable::ieee80211ad_single_carrier(const LinkParams& link) {
  struct Entry {
    double sensitivity_dbm;
    double rate_mbps;
  };
  static constexpr Entry kSc[] = {
      {-68.0, 385.0},  {-66.0, 770.0},  {-65.0, 962.5},  {-64.0, 1155.0},
      {-63.0, 1540.0}, {-62.0, 1925.0}, {-61.0, 2310.0}, {-59.0, 2502.5},
      {-55.0, 3080.0}, {-54.0, 3850.0}, {-53.0, 4620.0},
  };
  const double noise = noise_power_dbm(link);
  std::vector<McsRow> rows;
  for (const auto& e : kSc) rows.push_back({e.sensitivity_dbm - noise, e.rate_mbps * 1e6});
  return McsTable(std::move(rows));
}

double McsTable::throughput_bps(double snr_db) const {
  // first row with threshold > snr; the one before it applies
  auto it = std::upper_bound(rows_.begin(), rows_.end(), snr_db,
                             [](double s, const McsRow& r) { return s < r.min_snr_db; });
  if (it == rows_.begin()) return 0.0;
  return std::prev(it)->rate_bps;
}

double gain_linear(double beamwidth_deg) {
  if (!(beamwidth_deg > 0.0 && beamwidth_deg <= 360.0)) {
    throw InvalidParameter("beamwidth must be in (0, 360] degrees");
  }
  return 4.0 * 180.0 * 180.0 / (beamwidth_deg * beamwidth_deg * std::numbers::pi);
}

double gain_dbi(double beamwidth_deg) { return 10.0 * std::log10(gain_linear(beamwidth_deg)); }

double path_loss_db(double d, const LinkParams& params, double shadowing_db) {
  if (!(d > 0.0)) throw InvalidParameter("distance must be > 0");
  const double km = d / 1000.0;
  return 10.0 * params.pathloss_exp * std::log10(d) + shadowing_db + params.channel_att_db +
         (params.atm_att_db_per_km + params.rain_att_db_per_km) * km;
}

double noise_power_dbm(const LinkParams& params) {
  return params.noise_floor_dbm + 10.0 * std::log10(params.bandwidth_hz) + params.noise_figure_db;
}

double snr_db(double d, double beamwidth_deg, const LinkParams& params, double shadowing_db) {
  return params.p_tx_dbm + 2.0 * gain_dbi(beamwidth_deg) -
         path_loss_db(d, params, shadowing_db) - noise_power_dbm(params);
}

double capacity_bps(double snr_db, double bandwidth_hz) {
  return bandwidth_hz * std::log2(1.0 + std::pow(10.0, snr_db / 10.0));
}

double throughput_bps(double snr_db, const McsTable& mcs) { return mcs.throughput_bps(snr_db); }

LinkBudget link_budget(double d, double beamwidth_deg, const LinkParams& params,
                       double shadowing_db) {
  LinkBudget b;
  b.distance_m = d;
  b.beamwidth_deg = beamwidth_deg;
  b.p_tx_dbm = params.p_tx_dbm;
  b.gain_tx_dbi = gain_dbi(beamwidth_deg);
  b.gain_rx_dbi = b.gain_tx_dbi;
  b.distance_term_db = 10.0 * params.pathloss_exp * std::log10(d);
  b.shadowing_db = shadowing_db;
  b.channel_att_db = params.channel_att_db;
  b.atmospheric_db = params.atm_att_db_per_km * d / 1000.0;
  b.rain_db = params.rain_att_db_per_km * d / 1000.0;
  b.path_loss_db = path_loss_db(d, params, shadowing_db);
  b.p_rx_dbm = b.p_tx_dbm + b.gain_tx_dbi + b.gain_rx_dbi - b.path_loss_db;
  b.noise_power_dbm = noise_power_dbm(params);
  b.snr_db = b.p_rx_dbm - b.noise_power_dbm;
  b.capacity_bps = capacity_bps(b.snr_db, params.bandwidth_hz);
  return b;
}

}  // namespace hetbeam::rf
