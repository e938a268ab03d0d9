#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "hetbeam/alignment.hpp"
#include "hetbeam/errors.hpp"

using namespace hetbeam;

namespace {

// midpoint rule, fixed steps
template <class D>
double riemann_bits(D distance_of_t, double t0, double t1, double theta, const rf::LinkParams& link,
                    int steps = 1'000'000) {
  const double h = (t1 - t0) / steps;
  double sum = 0.0;
  for (int i = 0; i < steps; ++i) {
    sum += capacity_at(distance_of_t(t0 + (i + 0.5) * h), theta, link);
  }
  return sum * h;
}

}  // namespace

TEST(Steer, Angles) {
  const Vec2 rsu{20.0, 0.25};
  EXPECT_NEAR(steer_to(rsu + Vec2{0.0, 5.0}, rsu), 90.0, 1e-12);
  EXPECT_NEAR(steer_to(rsu + Vec2{2.5, 2.5}, rsu), 45.0, 1e-12);
  EXPECT_NEAR(steer_to(rsu + Vec2{-3.0, 4.0}, rsu), 126.87, 0.005);
  EXPECT_NEAR(steer_to(rsu + Vec2{0.0, -1.0}, rsu), 270.0, 1e-12);
  EXPECT_THROW(steer_to(rsu, rsu), InvalidParameter);
}

TEST(Steer, Covers) {
  const BeamConfig b{90.0, 20.0, {0.0, 0.0}};
  EXPECT_TRUE(b.covers({0.0, 5.0}));
  EXPECT_TRUE(b.covers({5.0 * std::tan(10.0 * std::numbers::pi / 180.0), 5.0}));
  EXPECT_FALSE(b.covers({1.0, 5.0}));
  EXPECT_FALSE(b.covers({0.0, -5.0}));
}

TEST(AlignmentTimes, ZeroErrorIsExact) {
  const PassGeometry g;
  const auto fp = beam_footprint(g, 22.0, 10.0);
  const auto a = alignment_times(g, fp, {});
  EXPECT_EQ(a.t_hat_i, a.t_i);
  EXPECT_EQ(a.t_hat_next, a.t_next);
  EXPECT_FALSE(a.outage);
  EXPECT_EQ(a.start, a.t_i);
  EXPECT_EQ(a.end, a.t_next);
}

TEST(AlignmentTimes, DelayedSteering) {
  const PassGeometry g;  // P_0 at 20, v 14
  const BeamFootprint fp{30.0, 40.0};
  const auto a = alignment_times(g, fp, {2.0, 0.0});
  EXPECT_NEAR(a.t_i, 10.0 / 14.0, 1e-15);
  EXPECT_NEAR(a.t_hat_i, 12.0 / 14.0, 1e-15);
  EXPECT_NEAR(a.start - a.t_i, 2.0 / 14.0, 1e-12);
  EXPECT_NEAR(a.end, a.t_next, 1e-15);
}

TEST(AlignmentTimes, TotalMisalignment) {
  const PassGeometry g;
  const BeamFootprint fp{30.0, 32.0};
  const auto a = alignment_times(g, fp, {5.0, 0.0});
  EXPECT_TRUE(a.outage);
  EXPECT_EQ(a.start, a.end);
  const auto r = beam_data_rate(a, 9.0, rf::LinkParams{}, g);
  EXPECT_EQ(r.bits, 0.0);
  EXPECT_EQ(r.mean_bps, 0.0);
}

TEST(DataRate, OutageIntervalIsZero) {
  AlignmentInterval iv{0.0, 1.0, -1, true};
  EXPECT_EQ(beam_data_rate(iv, 9.0, rf::LinkParams{}, [](double) { return 20.0; }).bits, 0.0);
}

TEST(DataRate, ConstantDistance) {
  const rf::LinkParams link;
  AlignmentInterval iv{0.25, 1.75, 3, false};
  const auto r = beam_data_rate(iv, 9.0, link, [](double) { return 20.0; });
  const double snr = rf::snr_db(20.0, 9.0, link, 0.0);
  const double c = link.bandwidth_hz * std::log2(1.0 + std::pow(10.0, snr / 10.0));
  EXPECT_NEAR(r.bits / (1.5 * c), 1.0, 1e-12);
  EXPECT_NEAR(r.mean_bps / c, 1.0, 1e-12);
}

TEST(DataRate, StraightPassMatchesRiemann) {
  const rf::LinkParams link;
  auto d = [](double t) { return std::sqrt(25.0 + (14.0 * t - 20.0) * (14.0 * t - 20.0)); };
  const double oracle = riemann_bits(d, 0.0, 2.857, 9.0, link);
  const double q = integrate_capacity(d, 0.0, 2.857, 9.0, link);
  EXPECT_NEAR(q / oracle, 1.0, 1e-6);
}

TEST(DataRate, RandomGeometriesMatchRiemann) {
  std::mt19937_64 gen(2718);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const rf::LinkParams link;
  for (int k = 0; k < 20; ++k) {
    PassGeometry g;
    g.rsu_offset = 2.0 + 10.0 * u(gen);
    g.speed = 5.0 + 20.0 * u(gen);
    g.rsu_along = 20.0;
    g.origin_along = 20.0;
    const double theta = 3.0 + 30.0 * u(gen);
    const double centre = 20.0 + (u(gen) - 0.5) * 2.0 * g.rsu_offset;
    const auto fp = beam_footprint(g, centre, theta);
    const PositionError e{(u(gen) - 0.5) * 0.4 * fp.length(), (u(gen) - 0.5) * 2.0};
    const auto a = alignment_times(g, fp, e);
    if (a.outage) continue;
    const auto r = beam_data_rate(a, theta, link, g);
    const double oracle =
        riemann_bits([&](double t) { return g.distance_at(t); }, a.start, a.end, theta, link);
    EXPECT_NEAR(r.bits / oracle, 1.0, 1e-6) << "geometry " << k;
    EXPECT_NEAR(r.mean_bps, r.bits / (a.t_next - a.t_i), 1e-6);
  }
}

TEST(Footprint, EdgesAndLimits) {
  const PassGeometry g;
  const auto fp = beam_footprint(g, 20.0, 30.0);
  EXPECT_NEAR(fp.start_along, 20.0 - 5.0 * std::tan(15.0 * std::numbers::pi / 180.0), 1e-12);
  EXPECT_NEAR(fp.length(), 10.0 * std::tan(15.0 * std::numbers::pi / 180.0), 1e-12);
  EXPECT_THROW(beam_footprint(g, 200.0, 30.0), InvalidParameter);
  EXPECT_THROW(beam_footprint(g, 20.0, 180.0), InvalidParameter);
}

TEST(Coverage, PerpendicularPass) {
  const BeamConfig b{90.0, 30.0, {0.0, 0.0}};
  const StraightTrajectory path{{-10.0, 5.0}, {1.0, 0.0}};
  const double c = coverage_interval(b, path, 14.0);
  EXPECT_NEAR(c, 2.0 * 5.0 * std::tan(15.0 * std::numbers::pi / 180.0) / 14.0, 1e-12);
  EXPECT_NEAR(c, 0.1914, 5e-5);
  EXPECT_NEAR(coverage_interval(b, path, 28.0), 0.5 * c, 1e-15);
}

TEST(Coverage, NarrowBeamAndMisses) {
  const StraightTrajectory path{{-10.0, 5.0}, {1.0, 0.0}};
  double prev = 1.0;
  for (double th : {10.0, 1.0, 0.1, 0.001}) {
    const double c = coverage_interval(BeamConfig{90.0, th, {0.0, 0.0}}, path, 14.0);
    EXPECT_LT(c, prev);
    prev = c;
  }
  EXPECT_LT(prev, 1e-5);
  // beam pointing away from the road
  EXPECT_EQ(coverage_interval(BeamConfig{270.0, 30.0, {0.0, 0.0}}, path, 14.0), 0.0);
}
