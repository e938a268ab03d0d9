#include "hetbeam/overhead.hpp"

#include <string>

#include "hetbeam/errors.hpp"
#include "hetbeam/stochastic.hpp"

namespace hetbeam::overhead {

namespace {

void require_positive(double v, const char* name) {
  if (!(v > 0.0)) throw InvalidParameter(std::string("frame timing ") + name + " must be > 0");
}

}  // namespace

FrameTimings FrameTimings::standard_defaults() {
  FrameTimings t;
  t.t_tx_ssw = 15.8e-6;
  t.t_rx_ssw = 15.8e-6;
  t.t_ssw_fb_ack = 31.6e-6;
  t.t_brp = 40e-6;
  t.t_brp_fb_ack = 31.6e-6;
  t.t_sbifs = 1e-6;
  t.t_sifs = 3e-6;
  t.t_mbifs = 9e-6;
  return t;
}

void FrameTimings::validate() const {
  require_positive(t_tx_ssw, "t_tx_ssw");
  require_positive(t_rx_ssw, "t_rx_ssw");
  require_positive(t_ssw_fb_ack, "t_ssw_fb_ack");
  require_positive(t_brp, "t_brp");
  require_positive(t_brp_fb_ack, "t_brp_fb_ack");
  require_positive(t_sbifs, "t_sbifs");
  require_positive(t_mbifs, "t_mbifs");
  require_positive(t_sifs, "t_sifs");
  if (!(t_sbifs <= t_sifs && t_sifs <= t_mbifs)) {
    throw InvalidParameter("interframe spaces must satisfy t_sbifs <= t_sifs <= t_mbifs");
  }
}

void TopologyParams::validate() const {
  if (k_sectors < 1) throw InvalidParameter("k_sectors must be >= 1");
  if (n_stations < 0) throw InvalidParameter("n_stations must be >= 0");
  if (s_combinations < 1) throw InvalidParameter("s_combinations must be >= 1");
  if (!(bi_length > 0.0 && bi_length <= 1.0)) {
    throw InvalidParameter("bi_length must be in (0, 1] seconds");
  }
}

double sls_duration(const FrameTimings& timings, const TopologyParams& topo) {
  timings.validate();
  topo.validate();
  const double k = topo.k_sectors;
  const double n = topo.n_stations;
  const double t_ifs = (n + 1.0) * (k - 1.0) * timings.t_sbifs + 3.0 * timings.t_mbifs;
  return k * timings.t_tx_ssw + n * (k * timings.t_rx_ssw + timings.t_ssw_fb_ack) + t_ifs;
}

double brp_rx_duration(const FrameTimings& timings) {
  timings.validate();
  return 2.0 * timings.t_brp + timings.t_brp_fb_ack + 3.0 * timings.t_sifs;
}

double beam_combining_duration(const FrameTimings& timings, const TopologyParams& topo) {
  timings.validate();
  topo.validate();
  const double s = topo.s_combinations;
  return s * timings.t_brp + timings.t_brp_fb_ack + 3.0 * timings.t_mbifs +
         (s - 1.0) * timings.t_sifs;
}

double total_beamforming_time(const FrameTimings& timings, const TopologyParams& topo) {
  return sls_duration(timings, topo) + brp_rx_duration(timings) +
         beam_combining_duration(timings, topo) + 2.0 * timings.t_sifs;
}

double overhead_fraction(const FrameTimings& timings, const TopologyParams& topo) {
  return total_beamforming_time(timings, topo) / topo.bi_length;
}

std::vector<OverheadRow> overhead_table(const FrameTimings& timings, TopologyParams topo,
                                        int n_min, int n_max) {
  if (n_min < 0 || n_max < n_min) throw InvalidParameter("invalid station range");
  std::vector<OverheadRow> rows;
  rows.reserve(static_cast<std::size_t>(n_max - n_min + 1));
  for (int n = n_min; n <= n_max; ++n) {
    topo.n_stations = n;
    OverheadRow r;
    r.n_stations = n;
    r.t_sls = sls_duration(timings, topo);
    r.t_rx = brp_rx_duration(timings);
    r.t_bc = beam_combining_duration(timings, topo);
    r.t_total = r.t_sls + r.t_rx + r.t_bc + 2.0 * timings.t_sifs;
    r.fraction_of_bi = r.t_total / topo.bi_length;
    rows.push_back(r);
  }
  return rows;
}

int count_collided(const std::vector<int>& slots) {
  int collided = 0;
  for (std::size_t i = 0; i < slots.size(); ++i) {
    for (std::size_t j = 0; j < slots.size(); ++j) {
      if (i != j && slots[i] == slots[j]) {
        ++collided;
        break;
      }
    }
  }
  return collided;
}

double abft_contention_loss(int n_stations, int n_slots, std::uint64_t rng_seed, int trials) {
  if (n_slots < 4 || n_slots > 8) throw InvalidParameter("A-BFT slot count must be in [4, 8]");
  if (n_stations < 0) throw InvalidParameter("n_stations must be >= 0");
  if (trials < 1) throw InvalidParameter("trials must be >= 1");
  if (n_stations == 0) return 0.0;

  Rng rng(rng_seed);
  std::vector<int> slots(static_cast<std::size_t>(n_stations));
  long long collided = 0;
  for (int t = 0; t < trials; ++t) {
    for (auto& s : slots) s = rng.uniform_int(0, n_slots - 1);
    collided += count_collided(slots);
  }
  return static_cast<double>(collided) /
         (static_cast<double>(trials) * static_cast<double>(n_stations));
}

}  // namespace hetbeam::overhead
