#include <benchmark/benchmark.h>

#include "hetbeam/alignment.hpp"
#include "hetbeam/analysis.hpp"
#include "hetbeam/simulation.hpp"

using namespace hetbeam;

static void BM_IntegrateCapacity(benchmark::State& state) {
  const rf::LinkParams link;
  const PassGeometry g;
  for (auto _ : state) {
    benchmark::DoNotOptimize(integrate_capacity(
        [&](double t) { return g.distance_at(t); }, -1.0, 1.0, 9.0, link));
  }
}
BENCHMARK(BM_IntegrateCapacity);

static void BM_ExpectedRate(benchmark::State& state) {
  const auto g = analysis::AnalysisGeometry::canonical();
  const GpsErrorModel m{static_cast<double>(state.range(0)) / 10.0,
                        static_cast<double>(state.range(0)) / 30.0};
  for (auto _ : state) benchmark::DoNotOptimize(analysis::expected_data_rate(20.0, m, g));
}
BENCHMARK(BM_ExpectedRate)->Arg(1)->Arg(10)->Arg(30)->Unit(benchmark::kMillisecond);

static void BM_OptimizeBeamwidth(benchmark::State& state) {
  const auto g = analysis::AnalysisGeometry::canonical();
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        analysis::optimize_beamwidth(GpsErrorModel{3.0, 1.0}, g, analysis::default_theta_grid()));
  }
}
BENCHMARK(BM_OptimizeBeamwidth)->Unit(benchmark::kMillisecond);

static void BM_Scenario(benchmark::State& state) {
  ScenarioConfig c;
  c.scheme = state.range(0) == 0 ? Scheme::proposed : Scheme::baseline;
  std::uint64_t seed = 1;
  for (auto _ : state) benchmark::DoNotOptimize(run_scenario(c, seed++).total_bits);
}
BENCHMARK(BM_Scenario)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
