#include "hetbeam/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <map>
#include <thread>
#include <tuple>

#include "hetbeam/csv.hpp"
#include "hetbeam/errors.hpp"
#include "hetbeam/simulation.hpp"

namespace hetbeam {

namespace {

std::string scenario_id(const SweepCell& cell, int replication) {
  char rep[16];
  std::snprintf(rep, sizeof rep, "%02d", replication);
  return std::string(to_string(cell.scheme)) + "_mu" + csv::format_number(cell.error_mu) + "_v" +
         csv::format_number(cell.velocity) + "_th" +
         (cell.theta ? csv::format_number(*cell.theta) : std::string("auto")) + "_r" + rep;
}

// Runs task(i) for i in [0, n) on `workers` threads.
template <class F>
void parallel_for(std::size_t n, int workers, F&& task) {
  std::atomic<std::size_t> next{0};
  auto loop = [&] {
    for (std::size_t i = next++; i < n; i = next++) task(i);
  };
  const std::size_t threads = std::min<std::size_t>(static_cast<std::size_t>(workers), n);
  if (threads <= 1) {
    loop();
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(loop);
}

}  // namespace

bool SweepResult::any_failed() const {
  return std::any_of(cells.begin(), cells.end(), [](const CellSummary& c) { return c.failed; });
}

std::vector<SweepCell> expand_cells(const SweepSpec& spec) {
  std::vector<SweepCell> cells;
  for (double mu : spec.error_mu) {
    for (double v : spec.velocity) {
      for (Scheme scheme : spec.schemes) {
        if (scheme == Scheme::proposed && !spec.theta.empty()) {
          for (double th : spec.theta) cells.push_back({scheme, mu, v, th});
        } else {
          cells.push_back({scheme, mu, v, std::nullopt});
        }
      }
    }
  }
  return cells;
}

ScenarioConfig cell_config(const ScenarioConfig& base, const SweepCell& cell) {
  ScenarioConfig c = base;
  c.scheme = cell.scheme;
  c.mobility.v_avg = cell.velocity;
  const double ratio = base.gps.mu > 0.0 ? base.gps.sigma / base.gps.mu : 1.0 / 3.0;
  c.gps.mu = cell.error_mu;
  c.gps.sigma = ratio * cell.error_mu;
  if (cell.theta) {
    c.beam.adaptive = false;
    c.beam.theta_deg = *cell.theta;
  }
  return c;
}

SweepResult run_sweep(const ScenarioConfig& base, const SweepSpec& spec, int workers) {
  ScenarioConfig checked = base;
  checked.sweep = spec;
  checked.validate();
  if (workers <= 0) workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));

  const auto cells = expand_cells(spec);
  const auto reps = static_cast<std::size_t>(spec.replications);

  // Adaptive beamwidths depend only on the cell's error model and speed;
  // resolve each distinct one once.
  using ThetaKey = std::tuple<double, double, double>;
  std::map<ThetaKey, std::size_t> theta_index;
  std::vector<ScenarioConfig> theta_configs;
  std::vector<ScenarioConfig> configs;
  configs.reserve(cells.size());
  for (const auto& cell : cells) {
    configs.push_back(cell_config(base, cell));
    const auto& c = configs.back();
    if (c.scheme == Scheme::proposed && c.beam.adaptive) {
      const ThetaKey key{c.gps.mu, c.gps.sigma, c.mobility.v_avg};
      if (theta_index.emplace(key, theta_configs.size()).second) theta_configs.push_back(c);
    }
  }
  std::vector<double> thetas(theta_configs.size(), 0.0);
  std::vector<std::string> theta_errors(theta_configs.size());
  parallel_for(theta_configs.size(), workers, [&](std::size_t i) {
    try {
      thetas[i] = resolve_beamwidth(theta_configs[i]);
    } catch (const std::exception& e) {
      theta_errors[i] = e.what();
    }
  });

  std::vector<std::optional<double>> cell_theta(cells.size());
  std::vector<std::string> cell_error(cells.size());
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const auto& c = configs[i];
    if (c.scheme == Scheme::proposed && c.beam.adaptive) {
      const std::size_t k = theta_index.at({c.gps.mu, c.gps.sigma, c.mobility.v_avg});
      if (theta_errors[k].empty()) cell_theta[i] = thetas[k];
      else cell_error[i] = theta_errors[k];
    }
  }

  std::vector<RunRecord> slots(cells.size() * reps);
  std::vector<std::string> run_error(cells.size() * reps);
  parallel_for(slots.size(), workers, [&](std::size_t idx) {
    const std::size_t ci = idx / reps;
    const int r = static_cast<int>(idx % reps);
    if (!cell_error[ci].empty()) return;
    try {
      RunOptions opt;
      opt.theta_deg = cell_theta[ci];
      const std::uint64_t seed = base.seed + static_cast<std::uint64_t>(r);
      const auto res = run_scenario(configs[ci], seed, opt);
      slots[idx] = RunRecord{scenario_id(cells[ci], r), cells[ci], r, seed, res.theta_deg,
                             res.mean_throughput_bps, res.outage_fraction};
    } catch (const std::exception& e) {
      run_error[idx] = e.what();
    }
  });

  SweepResult out;
  for (std::size_t ci = 0; ci < cells.size(); ++ci) {
    std::string err = cell_error[ci];
    for (std::size_t r = 0; r < reps && err.empty(); ++r) err = run_error[ci * reps + r];
    if (!err.empty()) {
      CellSummary failed;
      failed.cell = cells[ci];
      failed.failed = true;
      failed.error = err;
      out.cells.push_back(failed);
      continue;
    }
    std::vector<RunRecord> cell_runs(slots.begin() + static_cast<long>(ci * reps),
                                     slots.begin() + static_cast<long>((ci + 1) * reps));
    out.cells.push_back(summarize(cell_runs).front());
    out.runs.insert(out.runs.end(), cell_runs.begin(), cell_runs.end());
  }
  return out;
}

std::vector<CellSummary> summarize(const std::vector<RunRecord>& runs) {
  std::vector<CellSummary> out;
  auto same = [](const RunRecord& a, const RunRecord& b) {
    return a.cell.scheme == b.cell.scheme && a.cell.error_mu == b.cell.error_mu &&
           a.cell.velocity == b.cell.velocity && a.cell.theta == b.cell.theta &&
           a.theta_deg == b.theta_deg;
  };
  std::size_t i = 0;
  while (i < runs.size()) {
    std::size_t j = i;
    while (j < runs.size() && same(runs[j], runs[i])) ++j;
    CellSummary s;
    s.cell = runs[i].cell;
    s.theta_deg = runs[i].theta_deg;
    s.replications = static_cast<int>(j - i);
    double sum = 0.0, outage = 0.0;
    for (std::size_t k = i; k < j; ++k) {
      sum += runs[k].mean_throughput_bps;
      outage += runs[k].outage_fraction;
    }
    const double n = static_cast<double>(j - i);
    s.mean_throughput_bps = sum / n;
    s.mean_outage_fraction = outage / n;
    double ss = 0.0;
    for (std::size_t k = i; k < j; ++k) {
      const double d = runs[k].mean_throughput_bps - s.mean_throughput_bps;
      ss += d * d;
    }
    s.std_throughput_bps = j - i > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
    out.push_back(s);
    i = j;
  }
  return out;
}

}  // namespace hetbeam
