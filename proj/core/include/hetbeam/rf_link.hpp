#pragma once

// 60 GHz link arithmetic in the dB domain: ideal-beam gain from beamwidth,
// log-distance path loss, thermal noise, SNR, Shannon capacity and the MCS
// rate lookup. A line-of-sight link is always assumed.

#include <vector>

namespace hetbeam::rf {

struct LinkParams {
  double carrier_hz = 60e9;
  double bandwidth_hz = 2.16e9;
  double pathloss_exp = 2.66;
  double atm_att_db_per_km = 15.0;
  double rain_att_db_per_km = 25.0;
  double channel_att_db = 70.0;
  double p_tx_dbm = 10.0;
  double noise_floor_dbm = -174.0;  ///< thermal density, dBm/Hz
  double noise_figure_db = 6.0;

  void validate() const;

  friend bool operator==(const LinkParams&, const LinkParams&) = default;
};

struct McsRow {
  double min_snr_db = 0.0;
  double rate_bps = 0.0;

  friend bool operator==(const McsRow&, const McsRow&) = default;
};

/// Step function from SNR to PHY rate. Rows are strictly increasing in both
/// threshold and rate; a row applies from its threshold (inclusive) upward and
/// anything below the first threshold is outage (rate 0).
class McsTable {
 public:
  explicit McsTable(std::vector<McsRow> rows);

  /// 802.11ad single-carrier MCS1..MCS12 receiver sensitivities converted to
  /// SNR thresholds against noise_power_dbm(link). MCS5 is dropped: its
  /// sensitivity (-62 dBm) is stricter than MCS6 (-63 dBm) at a lower rate.
  static McsTable ieee80211ad_single_carrier(const LinkParams& link);

  double throughput_bps(double snr_db) const;
  const std::vector<McsRow>& rows() const { return rows_; }

  friend bool operator==(const McsTable&, const McsTable&) = default;

 private:
  std::vector<McsRow> rows_;
};

/// 4 * 180^2 / (theta^2 * pi) for 0 < theta <= 360.
double gain_linear(double beamwidth_deg);
double gain_dbi(double beamwidth_deg);

/// 10 n log10(d) + SF + C_att + (A_att + R_att) * d / 1000, d in metres.
double path_loss_db(double d, const LinkParams& params, double shadowing_db);

/// N_floor + 10 log10(B) + NF.
double noise_power_dbm(const LinkParams& params);

/// P_tx + 2 G(theta) - PL(d) - P_noise, both ends using the same beamwidth.
double snr_db(double d, double beamwidth_deg, const LinkParams& params, double shadowing_db);

/// B log2(1 + 10^(snr/10)); -inf dB gives 0.
double capacity_bps(double snr_db, double bandwidth_hz);

double throughput_bps(double snr_db, const McsTable& mcs);

/// Every term of the budget, for auditing.
struct LinkBudget {
  double distance_m = 0.0;
  double beamwidth_deg = 0.0;
  double p_tx_dbm = 0.0;
  double gain_tx_dbi = 0.0;
  double gain_rx_dbi = 0.0;
  double distance_term_db = 0.0;  ///< 10 n log10(d), reference 1 m
  double shadowing_db = 0.0;
  double channel_att_db = 0.0;
  double atmospheric_db = 0.0;
  double rain_db = 0.0;
  double path_loss_db = 0.0;
  double p_rx_dbm = 0.0;
  double noise_power_dbm = 0.0;
  double snr_db = 0.0;
  double capacity_bps = 0.0;
};

LinkBudget link_budget(double d, double beamwidth_deg, const LinkParams& params,
                       double shadowing_db = 0.0);

}  // namespace hetbeam::rf
