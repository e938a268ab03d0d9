#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "hetbeam/analysis.hpp"
#include "hetbeam/errors.hpp"

using namespace hetbeam;
using namespace hetbeam::analysis;

namespace {

double riemann_bits(const AnalysisGeometry& g, double t0, double t1, double theta,
                    int steps = 1'000'000) {
  const auto pass = g.pass();
  const double h = (t1 - t0) / steps;
  double sum = 0.0;
  for (int i = 0; i < steps; ++i) {
    sum += capacity_at(pass.distance_at(t0 + (i + 0.5) * h), theta, g.link);
  }
  return sum * h;
}

// D(e) sampled densely and interpolated linearly, for Monte-Carlo draws
class RateTable {
 public:
  RateTable(ErrorAxis axis, double theta, const AnalysisGeometry& g, double reach, int n = 8001)
      : lo_(-reach), step_(2.0 * reach / (n - 1)) {
    for (int i = 0; i < n; ++i) {
      const double e = lo_ + i * step_;
      values_.push_back(data_rate_conditional(axis, e, theta, g));
    }
  }
  double operator()(double e) const {
    const double u = (e - lo_) / step_;
    if (u <= 0.0 || u >= static_cast<double>(values_.size() - 1)) return 0.0;
    const auto i = static_cast<std::size_t>(u);
    const double f = u - static_cast<double>(i);
    return (1.0 - f) * values_[i] + f * values_[i + 1];
  }

 private:
  double lo_, step_;
  std::vector<double> values_;
};

}  // namespace

TEST(Conditional, ZeroErrorIsErrorFree) {
  const auto g = AnalysisGeometry::canonical();
  const auto fp = g.footprint(10.0);
  const auto pass = g.pass();
  const double free = integrate_capacity([&](double t) { return pass.distance_at(t); },
                                         pass.time_at(fp.start_along), pass.time_at(fp.end_along),
                                         10.0, g.link);
  EXPECT_NEAR(data_rate_conditional(ErrorAxis::x, 0.0, 10.0, g) / free, 1.0, 1e-12);
  EXPECT_NEAR(data_rate_conditional(ErrorAxis::y, 0.0, 10.0, g) / free, 1.0, 1e-12);
}

TEST(Conditional, BeyondBoundIsZero) {
  const auto g = AnalysisGeometry::canonical();
  for (ErrorAxis axis : {ErrorAxis::x, ErrorAxis::y}) {
    const auto b = misalignment_bounds(axis, 10.0, g);
    EXPECT_EQ(data_rate_conditional(axis, b.upper * 1.01, 10.0, g), 0.0);
    EXPECT_EQ(data_rate_conditional(axis, b.lower * 1.01, 10.0, g), 0.0);
    EXPECT_GT(data_rate_conditional(axis, b.upper * 0.99, 10.0, g), 0.0);
  }
}

TEST(Conditional, OneMetreAlongTrackMatchesRiemann) {
  const auto g = AnalysisGeometry::canonical();
  const double theta = 30.0;
  const auto fp = g.footprint(theta);
  ASSERT_GT(fp.length(), 1.0);
  // the start edge sits past P_0, so the shifted start is simply 1 m later
  ASSERT_GT(fp.start_along, g.origin_along);
  const double t0 = (fp.start_along - g.origin_along + 1.0) / g.speed;
  const double t1 = (fp.end_along - g.origin_along) / g.speed;
  const double oracle = riemann_bits(g, t0, t1, theta);
  EXPECT_NEAR(data_rate_conditional(ErrorAxis::x, 1.0, theta, g) / oracle, 1.0, 1e-6);
}

TEST(Bounds, FirstPrinciples) {
  const auto g = AnalysisGeometry::canonical();
  const auto fp = g.footprint(10.0);
  const auto bx = misalignment_bounds(ErrorAxis::x, 10.0, g);
  EXPECT_NEAR(bx.upper, fp.length(), 1e-12);
  EXPECT_NEAR(bx.lower, -fp.length(), 1e-12);
  const double qi = fp.start_along - g.origin_along, qn = fp.end_along - g.origin_along;
  const auto by = misalignment_bounds(ErrorAxis::y, 10.0, g);
  EXPECT_NEAR(by.upper, std::sqrt(qn * qn - qi * qi), 1e-12);
  EXPECT_NEAR(by.lower, -by.upper, 1e-12);

  AnalysisGeometry straddle = g;
  straddle.beam_center_along = g.origin_along;
  EXPECT_TRUE(std::isinf(misalignment_bounds(ErrorAxis::y, 10.0, straddle).upper));
}

TEST(Bounds, LiteralLimitsAgreeOnXOnly) {
  const auto g = AnalysisGeometry::canonical();
  for (double theta : {5.0, 10.0, 30.0}) {
    const auto px = literal_misalignment_bounds(ErrorAxis::x, theta, g);
    const auto fx = misalignment_bounds(ErrorAxis::x, theta, g);
    EXPECT_NEAR(px.lower, fx.lower, 1e-12);
    EXPECT_NEAR(px.upper, fx.upper, 1e-12);
    const auto py = literal_misalignment_bounds(ErrorAxis::y, theta, g);
    const auto fy = misalignment_bounds(ErrorAxis::y, theta, g);
    EXPECT_GT(std::abs(py.upper - fy.upper), 1e-3);
  }
}

TEST(Sensitivity, AnalyticMatchesFiniteDifference) {
  std::mt19937_64 gen(99);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int checked = 0;
  for (int k = 0; k < 20; ++k) {
    AnalysisGeometry g = AnalysisGeometry::canonical();
    g.rsu_offset = 3.0 + 6.0 * u(gen);
    g.speed = 6.0 + 16.0 * u(gen);
    g.beam_center_along = g.rsu_along + 0.3 + 4.0 * u(gen);
    const double theta = 5.0 + 25.0 * u(gen);
    const ErrorAxis axis = k % 2 == 0 ? ErrorAxis::x : ErrorAxis::y;
    const auto b = misalignment_bounds(axis, theta, g);
    const double reach = std::min(std::isfinite(b.upper) ? b.upper : 3.0, 3.0);
    const double e = (u(gen) < 0.5 ? -1.0 : 1.0) * (0.05 + 0.8 * reach * u(gen));
    if (!b.aligned(e) || std::abs(e) < 0.01) continue;
    const auto a = sensitivity_coefficient(axis, e, theta, g, DerivativeMethod::analytic);
    const auto f = sensitivity_coefficient(axis, e, theta, g, DerivativeMethod::finite_difference);
    const double scale = std::max(std::abs(a.coefficient), 1e-3 * std::abs(
        data_rate_conditional(axis, 0.0, theta, g)));
    EXPECT_LE(std::abs(a.coefficient - f.coefficient) / scale, 1e-4) << "geometry " << k;
    ++checked;
  }
  EXPECT_GE(checked, 15);
}

TEST(Sensitivity, SymmetricBeamIgnoresCrossTrack) {
  AnalysisGeometry g = AnalysisGeometry::canonical();
  g.beam_center_along = g.origin_along;
  for (double e : {-0.4, 0.3, 1.5}) {
    const auto a = sensitivity_coefficient(ErrorAxis::y, e, 10.0, g, DerivativeMethod::analytic);
    const auto f =
        sensitivity_coefficient(ErrorAxis::y, e, 10.0, g, DerivativeMethod::finite_difference);
    EXPECT_NEAR(a.coefficient, 0.0, 1e-6);
    EXPECT_NEAR(f.coefficient, 0.0, 1e-3);
  }
}

TEST(Sensitivity, AlongTrackDominates) {
  const auto g = AnalysisGeometry::canonical();
  for (double e = 0.05; e < 0.61; e += 0.05) {
    for (double s : {-1.0, 1.0}) {
      const double ux =
          sensitivity_coefficient(ErrorAxis::x, s * e, 10.0, g, DerivativeMethod::analytic)
              .coefficient;
      const double uy =
          sensitivity_coefficient(ErrorAxis::y, s * e, 10.0, g, DerivativeMethod::analytic)
              .coefficient;
      EXPECT_GT(std::abs(ux), std::abs(uy)) << s * e;
    }
  }
}

TEST(Sensitivity, BoundaryRejected) {
  const auto g = AnalysisGeometry::canonical();
  EXPECT_THROW(sensitivity_coefficient(ErrorAxis::x, 0.0, 10.0, g, DerivativeMethod::analytic),
               BoundaryNondifferentiable);
  const auto b = misalignment_bounds(ErrorAxis::x, 10.0, g);
  EXPECT_THROW(sensitivity_coefficient(ErrorAxis::x, b.upper - 1e-4, 10.0, g,
                                       DerivativeMethod::finite_difference),
               BoundaryNondifferentiable);
  EXPECT_EQ(sensitivity_coefficient(ErrorAxis::x, b.upper + 1.0, 10.0, g,
                                    DerivativeMethod::analytic).coefficient,
            0.0);
}

TEST(Expectation, NoErrorIsErrorFree) {
  const auto g = AnalysisGeometry::canonical();
  const auto r = expected_data_rate(10.0, std::nullopt, g);
  EXPECT_EQ(r.total_bps, r.error_free_bps);
  const auto tiny = expected_data_rate(10.0, GpsErrorModel{1e-6, 1e-8}, g);
  EXPECT_NEAR(tiny.total_bps / tiny.error_free_bps, 1.0, 1e-5);
  EXPECT_LT(tiny.total_bps, tiny.error_free_bps);
  EXPECT_NEAR(r.error_free_bps,
              data_rate_conditional(ErrorAxis::x, 0.0, 10.0, g) / (g.footprint(10.0).length() /
                                                                   g.speed),
              1e-6 * r.error_free_bps);
}

TEST(Expectation, MatchesMonteCarlo) {
  const auto g = AnalysisGeometry::canonical();
  std::mt19937_64 gen(31337);
  for (double mu : {0.3, 1.0, 3.0}) {
    for (double theta : {10.0, 30.0}) {
      const GpsErrorModel m{mu, mu / 3.0};
      const auto bx = misalignment_bounds(ErrorAxis::x, theta, g);
      const auto by = misalignment_bounds(ErrorAxis::y, theta, g);
      const double reach_y = std::isfinite(by.upper) ? by.upper : 40.0;
      const RateTable dx(ErrorAxis::x, theta, g, bx.upper);
      const RateTable dy(ErrorAxis::y, theta, g, reach_y);
      const auto p = m.underlying();
      std::lognormal_distribution<double> mag(p.m, p.s);
      std::bernoulli_distribution coin(0.5);
      const int n = 1'000'000;
      double sx = 0.0, sy = 0.0;
      for (int i = 0; i < n; ++i) {
        sx += dx((coin(gen) ? 1.0 : -1.0) * mag(gen));
        sy += dy((coin(gen) ? 1.0 : -1.0) * mag(gen));
      }
      const double T = g.footprint(theta).length() / g.speed;
      const double mc = 0.5 * (sx + sy) / n / T;
      const auto r = expected_data_rate(theta, m, g);
      EXPECT_NEAR(r.total_bps / mc, 1.0, 0.01) << "mu " << mu << " theta " << theta;
      EXPECT_NEAR(r.total_bps, 0.5 * (r.x_bps + r.y_bps), 1e-9 * r.total_bps);
      EXPECT_LT(r.total_bps, r.error_free_bps);
    }
  }
}

TEST(Expectation, MonotoneInErrorMean) {
  const auto g = AnalysisGeometry::canonical();
  for (double theta : {5.0, 10.0, 20.0, 40.0}) {
    double prev = expected_data_rate(theta, std::nullopt, g).total_bps;
    for (double mu : {0.1, 0.5, 1.0, 2.0, 3.0, 5.0}) {
      const double r = expected_data_rate(theta, GpsErrorModel{mu, mu / 3.0}, g).total_bps;
      EXPECT_LE(r, prev) << theta << " " << mu;
      prev = r;
    }
  }
}

TEST(Expectation, NoQuadratureJumpsOnGrid) {
  const auto g = AnalysisGeometry::canonical();
  // beamwidth at which the start edge reaches P_0; the model itself jumps there
  const double straddle = 2.0 * std::atan((g.beam_center_along - g.origin_along) / g.rsu_offset) *
                          180.0 / std::numbers::pi;
  const auto grid = default_theta_grid();
  for (double mu : {0.1, 1.0, 3.0}) {
    const GpsErrorModel m{mu, mu / 3.0};
    const auto opt = optimize_beamwidth(m, g, grid);
    const auto& r = opt.grid_rates;
    const double peak = *std::max_element(r.begin(), r.end());
    for (std::size_t i = 1; i + 2 < r.size(); ++i) {
      if (grid[i - 1] <= straddle && straddle <= grid[i + 2]) continue;
      const double mid = expected_data_rate(0.5 * (grid[i] + grid[i + 1]), m, g).total_bps;
      const double cubic = (-r[i - 1] + 9.0 * r[i] + 9.0 * r[i + 1] - r[i + 2]) / 16.0;
      EXPECT_LT(std::abs(mid - cubic), 0.005 * peak) << "mu " << mu << " theta " << grid[i];
    }
  }
}

TEST(Expectation, StepWhereFootprintReachesOrigin) {
  const auto g = AnalysisGeometry::canonical();
  const double straddle = 2.0 * std::atan(2.0 / 5.0) * 180.0 / std::numbers::pi;
  const GpsErrorModel m{3.0, 1.0};
  const auto below = expected_data_rate(straddle - 1e-6, m, g);
  const auto above = expected_data_rate(straddle + 1e-6, m, g);
  // along-track part is continuous, cross-track part loses its bound
  EXPECT_NEAR(above.x_bps / below.x_bps, 1.0, 1e-4);
  EXPECT_GT(above.y_bps, 1.5 * below.y_bps);
  EXPECT_TRUE(std::isinf(misalignment_bounds(ErrorAxis::y, straddle + 1e-6, g).upper));
  EXPECT_TRUE(std::isfinite(misalignment_bounds(ErrorAxis::y, straddle - 1e-6, g).upper));
}

TEST(Optimizer, ZeroErrorPicksNarrowest) {
  const auto g = AnalysisGeometry::canonical();
  const auto opt = optimize_beamwidth(std::nullopt, g, default_theta_grid());
  EXPECT_EQ(opt.theta_star_deg, 1.0);
}

TEST(Optimizer, InteriorOptimumGrowsWithError) {
  const auto g = AnalysisGeometry::canonical();
  double prev = 0.0;
  for (double mu : {0.1, 1.0, 3.0}) {
    const auto opt = optimize_beamwidth(GpsErrorModel{mu, mu / 3.0}, g, default_theta_grid());
    EXPECT_GT(opt.theta_star_deg, 1.0);
    EXPECT_LT(opt.theta_star_deg, 60.0);
    EXPECT_GT(opt.expected_rate_bps, opt.grid_rates.front());
    EXPECT_GT(opt.expected_rate_bps, opt.grid_rates.back());
    EXPECT_GT(opt.theta_star_deg, prev) << mu;
    prev = opt.theta_star_deg;
    // the refined point is at least as good as every grid point
    EXPECT_GE(opt.expected_rate_bps, *std::max_element(opt.grid_rates.begin(),
                                                       opt.grid_rates.end()));
  }
}

TEST(Optimizer, StableUnderGridOffset) {
  const auto g = AnalysisGeometry::canonical();
  for (double mu : {1.0, 3.0}) {
    const GpsErrorModel m{mu, mu / 3.0};
    const auto a = optimize_beamwidth(m, g, default_theta_grid(1.0, 60.0, 0.5));
    const auto b = optimize_beamwidth(m, g, default_theta_grid(1.25, 60.25, 0.5));
    EXPECT_LE(std::abs(a.theta_star_deg - b.theta_star_deg), 0.1) << mu;
  }
}

TEST(Optimizer, Grid) {
  const auto grid = default_theta_grid();
  ASSERT_EQ(grid.size(), 119u);
  EXPECT_EQ(grid.front(), 1.0);
  EXPECT_EQ(grid.back(), 60.0);
  EXPECT_THROW(optimize_beamwidth(std::nullopt, AnalysisGeometry::canonical(), {1.0, 2.0}),
               InvalidParameter);
}
