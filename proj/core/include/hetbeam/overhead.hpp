#pragma once

// Legacy IEEE 802.11ad beamforming-training time per Beacon Interval.
//
// All durations are in seconds. The closed forms assume a collision-free
// channel; A-BFT slot contention is estimated separately by
// abft_contention_loss so the two effects can be composed.

#include <cstdint>
#include <vector>

namespace hetbeam::overhead {

struct FrameTimings {
  double t_tx_ssw = 0.0;
  double t_rx_ssw = 0.0;
  double t_ssw_fb_ack = 0.0;  ///< SSW-FB plus SSW-ACK
  double t_brp = 0.0;
  double t_brp_fb_ack = 0.0;  ///< BRP feedback plus acknowledgement
  double t_sbifs = 0.0;
  double t_mbifs = 0.0;
  double t_sifs = 0.0;

  /// Control-PHY frame durations and interframe spaces of the standard:
  /// SSW 15.8 us, BRP 40 us, SBIFS 1 us, SIFS 3 us, MBIFS 9 us. The
  /// feedback/ack pairs are two control-PHY frames each.
  static FrameTimings standard_defaults();

  /// Throws InvalidParameter unless every duration is positive and
  /// t_sbifs <= t_sifs <= t_mbifs.
  void validate() const;

  friend bool operator==(const FrameTimings&, const FrameTimings&) = default;
};

struct TopologyParams {
  int k_sectors = 16;        ///< virtual sectors, same for every device
  int n_stations = 1;        ///< stations around the PCP/AP
  int s_combinations = 256;  ///< antenna weight vector pairs tested in BC
  double bi_length = 0.030;  ///< seconds, (0, 1]

  void validate() const;

  friend bool operator==(const TopologyParams&, const TopologyParams&) = default;
};

double sls_duration(const FrameTimings& timings, const TopologyParams& topo);
double brp_rx_duration(const FrameTimings& timings);
double beam_combining_duration(const FrameTimings& timings, const TopologyParams& topo);

/// SLS + BRP receive training + beam combining + 2 SIFS.
double total_beamforming_time(const FrameTimings& timings, const TopologyParams& topo);

/// total_beamforming_time / bi_length.
double overhead_fraction(const FrameTimings& timings, const TopologyParams& topo);

struct OverheadRow {
  int n_stations = 0;
  double t_sls = 0.0;
  double t_rx = 0.0;
  double t_bc = 0.0;
  double t_total = 0.0;
  double fraction_of_bi = 0.0;
};

/// One row per station count in [n_min, n_max], other topology fields fixed.
std::vector<OverheadRow> overhead_table(const FrameTimings& timings, TopologyParams topo,
                                        int n_min, int n_max);

/// Stations that picked the same A-BFT slot as at least one other station,
/// for a single BI. `slots` holds one slot index per station.
int count_collided(const std::vector<int>& slots);

/// Monte-Carlo estimate of the fraction of stations whose RX-SSW collides
/// when each picks one of `n_slots` A-BFT slots uniformly. n_slots must be in
/// [4, 8]. Zero stations give 0.
double abft_contention_loss(int n_stations, int n_slots, std::uint64_t rng_seed,
                            int trials = 100000);

}  // namespace hetbeam::overhead
