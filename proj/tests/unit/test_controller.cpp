#include <gtest/gtest.h>

#include "hetbeam/controller.hpp"
#include "hetbeam/errors.hpp"
#include "hetbeam/kinematics.hpp"

using namespace hetbeam;

namespace {

BeaconRecord beacon_of(const VehicleState& s) {
  return {s.pos, s.speed, s.heading_deg, s.yaw_rate_dps, s.timestamp};
}

ControllerConfig config(double theta) {
  ControllerConfig c;
  c.rsu_pos = {20.0, 0.25};
  c.beamwidth_deg = theta;
  return c;
}

}  // namespace

TEST(Controller, NoBeaconNoBeam) {
  BeamController c(config(10.0));
  EXPECT_FALSE(c.step(0.5).has_value());
  EXPECT_FALSE(c.has_anchor());
  EXPECT_EQ(c.beam_index(), -1);
}

TEST(Controller, StaticVehicleSteeredOnce) {
  BeamController c(config(10.0));
  VehicleState s;
  s.pos = {12.0, 5.25};
  s.speed = 0.0;
  c.on_beacon(beacon_of(s));
  for (int i = 0; i < 5000; ++i) {
    const double now = i * 1e-3;
    if (i % 100 == 0 && i > 0) {
      s.timestamp = now;
      c.on_beacon(beacon_of(s));
    }
    const auto beam = c.step(now);
    ASSERT_TRUE(beam.has_value());
    EXPECT_TRUE(beam->covers(s.pos));
  }
  EXPECT_EQ(c.beam_index(), 0);
}

TEST(Controller, PerfectKnowledgeNoOutage) {
  BeamController c(config(10.0));
  VehicleState s;
  s.pos = {0.0, 5.25};
  s.speed = 14.0;
  const double dt = 1e-3;
  int covered = 0, steps = 0;
  for (int i = 0; s.pos.x <= 40.0; ++i) {
    if (i % 100 == 0) c.on_beacon(beacon_of(s));
    const auto beam = c.step(s.timestamp);
    ASSERT_TRUE(beam.has_value());
    covered += beam->covers(s.pos);
    ++steps;
    s = step_true_motion(s, dt);
  }
  EXPECT_EQ(covered, steps);
  EXPECT_GT(c.beam_index(), 3);
}

TEST(Controller, PerfectKnowledgeOnArc) {
  BeamController c(config(8.0));
  VehicleState s;
  s.pos = {0.0, 5.25};
  s.speed = 14.0;
  s.yaw_rate_dps = -4.0;
  for (int i = 0; i < 2800; ++i) {
    if (i % 100 == 0) c.on_beacon(beacon_of(s));
    const auto beam = c.step(s.timestamp);
    ASSERT_TRUE(beam.has_value());
    ASSERT_TRUE(beam->covers(s.pos)) << "t=" << s.timestamp;
    s = step_true_motion(s, 1e-3);
  }
}

TEST(Controller, LostBeaconUsesPrediction) {
  BeamController c(config(10.0));
  VehicleState s;
  s.pos = {3.0, 5.25};
  s.speed = 14.0;
  s.yaw_rate_dps = 5.0;
  s.timestamp = 0.1;
  c.on_beacon(beacon_of(s));
  // the 0.2 s beacon never arrives
  const Vec2 expected = predict_position(s, 0.1).pos;
  const Vec2 got = c.tracked_position(0.2);
  EXPECT_LT(distance(got, expected), 1e-12);
}

TEST(Controller, UnchangedPositionKeepsAnchor) {
  BeamController c(config(10.0));
  VehicleState s;
  s.pos = {3.0, 5.25};
  s.speed = 14.0;
  c.on_beacon(beacon_of(s));
  BeaconRecord stale = beacon_of(s);
  stale.est_pos = s.pos + Vec2{0.005, 0.0};
  stale.timestamp = 0.1;
  c.on_beacon(stale);
  EXPECT_LT(distance(c.tracked_position(0.2), predict_position(s, 0.2).pos), 1e-12);

  BeaconRecord moved = stale;
  moved.est_pos = s.pos + Vec2{1.0, 0.0};
  moved.timestamp = 0.2;
  c.on_beacon(moved);
  EXPECT_LT(distance(c.tracked_position(0.2), moved.est_pos), 1e-12);
}

TEST(Controller, RejectsOutOfOrderBeacons) {
  BeamController c(config(10.0));
  BeaconRecord b;
  b.est_pos = {1.0, 5.0};
  b.timestamp = 1.0;
  c.on_beacon(b);
  b.timestamp = 0.5;
  EXPECT_THROW(c.on_beacon(b), InvalidParameter);
}

TEST(Controller, ConfigValidation) {
  ControllerConfig c = config(0.0);
  EXPECT_THROW(c.validate(), InvalidParameter);
  EXPECT_THROW(BeamController{c}, InvalidParameter);
  EXPECT_NO_THROW(config(22.5).validate());
}
