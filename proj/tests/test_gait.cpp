#include <cmath>
#include <random>
#include <stdexcept>

#include <gtest/gtest.h>

#include "tbiped/errors.hpp"
#include "tbiped/gait.hpp"

namespace tbiped::gait {
namespace {

using kin::FootTarget;
using kin::Side;

// Independent evaluation by repeated linear interpolation.
Point de_casteljau(std::vector<Point> pts, double t) {
  for (std::size_t n = pts.size(); n > 1; --n) {
    for (std::size_t i = 0; i + 1 < n; ++i) pts[i] = (1.0 - t) * pts[i] + t * pts[i + 1];
  }
  return pts[0];
}

double dist(const FootTarget& a, const FootTarget& b) {
  return std::hypot(a.x - b.x, a.y - b.y, a.z - b.z);
}

GaitParams trot(double length = 0.0) {
  GaitParams p;
  p.step_length = length;
  return p;
}

TEST(Bernstein, TrivialOrders) {
  EXPECT_EQ(bernstein(0, 0, 0.3), 1.0);
  EXPECT_EQ(bernstein(0, 1, 0.3), 0.7);
  EXPECT_EQ(bernstein(1, 1, 0.3), 0.3);
}

TEST(Bernstein, HandEvaluation) {
  EXPECT_DOUBLE_EQ(bernstein(2, 4, 0.5), 0.375);
  EXPECT_DOUBLE_EQ(bernstein(1, 3, 0.25), 0.421875);
  EXPECT_DOUBLE_EQ(bernstein(0, 4, 0.25), 0.31640625);
}

TEST(Bernstein, DomainErrors) {
  EXPECT_THROW(bernstein(5, 4, 0.5), std::domain_error);
  EXPECT_THROW(bernstein(-1, 4, 0.5), std::domain_error);
  EXPECT_THROW(bernstein(1, 4, -0.01), std::domain_error);
  EXPECT_THROW(bernstein(1, 4, 1.01), std::domain_error);
}

TEST(Bernstein, PartitionOfUnity) {
  for (int n = 1; n <= 8; ++n) {
    for (int k = 0; k <= 1000; ++k) {
      const double t = k / 1000.0;
      double sum = 0.0;
      for (int i = 0; i <= n; ++i) sum += bernstein(i, n, t);
      EXPECT_NEAR(sum, 1.0, 1e-12);
    }
  }
}

TEST(Bezier, RequiresTwoPoints) {
  EXPECT_THROW(BezierCurve({Point::Zero()}), std::invalid_argument);
  EXPECT_THROW(bezier_eval(BezierCurve({Point::Zero(), Point::Ones()}), 1.5), std::domain_error);
}

TEST(Bezier, LinearIsLerp) {
  const Point a(0.1, -0.2, 0.3), b(0.5, 0.4, -0.1);
  const Point m = bezier_eval(BezierCurve({a, b}), 0.25);
  EXPECT_LT((m - (0.75 * a + 0.25 * b)).norm(), 1e-15);
}

TEST(Bezier, MatchesDeCasteljau) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(-1.0, 1.0), ut(0.0, 1.0);
  for (int n = 1; n <= 8; ++n) {
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<Point> pts;
      for (int i = 0; i <= n; ++i) pts.emplace_back(u(rng), u(rng), u(rng));
      const BezierCurve c(pts);
      EXPECT_EQ(bezier_eval(c, 0.0), pts.front());
      EXPECT_EQ(bezier_eval(c, 1.0), pts.back());
      for (int k = 0; k < 20; ++k) {
        const double t = ut(rng);
        EXPECT_LT((bezier_eval(c, t) - de_casteljau(pts, t)).norm(), 1e-12);
      }
    }
  }
}

TEST(Bezier, StaysInsideControlBoundingBox) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Point> pts;
    for (int i = 0; i < 5; ++i) pts.emplace_back(u(rng), u(rng), u(rng));
    Point lo = pts[0], hi = pts[0];
    for (const Point& p : pts) {
      lo = lo.cwiseMin(p);
      hi = hi.cwiseMax(p);
    }
    const BezierCurve c(pts);
    for (int k = 0; k <= 200; ++k) {
      const Point p = bezier_eval(c, k / 200.0);
      EXPECT_TRUE((p.array() >= lo.array() - 1e-12).all());
      EXPECT_TRUE((p.array() <= hi.array() + 1e-12).all());
    }
  }
}

TEST(StepCurve, ControlPointsAndEndpoints) {
  const GaitParams gp = trot(0.08);
  const Point start(-0.04, 0.0, 0.4), end(0.05, 0.01, 0.4);
  const BezierCurve c = build_step_curve(start, end, gp);
  ASSERT_EQ(c.order(), 4);
  EXPECT_EQ(c.control_points()[1], start);
  EXPECT_EQ(c.control_points()[3], end);
  const Point apex = c.control_points()[2];
  EXPECT_NEAR(apex.z(), 0.4 - gp.step_height - gp.lift_offset, 1e-15);
  EXPECT_EQ(bezier_eval(c, 0.0), start);
  EXPECT_EQ(bezier_eval(c, 1.0), end);
}

TEST(StepCurve, ZeroEndpointVelocity) {
  const BezierCurve c = build_step_curve({-0.04, 0.0, 0.4}, {0.04, 0.0, 0.4}, trot(0.08));
  const double h = 1e-6;
  EXPECT_LT((bezier_eval(c, h) - bezier_eval(c, 0.0)).norm() / h, 1e-4);
  EXPECT_LT((bezier_eval(c, 1.0) - bezier_eval(c, 1.0 - h)).norm() / h, 1e-4);
}

TEST(StepCurve, InPlaceApexHeight) {
  const GaitParams gp = trot();
  const Point p(0.0, 0.0, 0.4);
  const Point mid = bezier_eval(build_step_curve(p, p, gp), 0.5);
  EXPECT_NEAR(mid.z(), 0.4 - 0.375 * (gp.step_height + gp.lift_offset), 1e-15);
  EXPECT_EQ(mid.x(), 0.0);
}

TEST(GaitPhase, ScheduleAtKeyTimes) {
  const GaitParams gp = trot();
  GaitPhase l = gait_phase(0.0, gp, Side::kLeft);
  GaitPhase r = gait_phase(0.0, gp, Side::kRight);
  EXPECT_EQ(l.phase, LegPhase::kStance);
  EXPECT_EQ(l.phase_time, 0.0);
  EXPECT_EQ(r.phase, LegPhase::kSwing);
  EXPECT_EQ(r.phase_time, 0.0);

  l = gait_phase(0.15, gp, Side::kLeft);
  r = gait_phase(0.15, gp, Side::kRight);
  EXPECT_NEAR(l.phase_time, 0.5, 1e-12);
  EXPECT_NEAR(r.phase_time, 0.5, 1e-12);

  l = gait_phase(0.3, gp, Side::kLeft);
  EXPECT_EQ(l.phase, LegPhase::kSwing);
}

TEST(GaitPhase, AlwaysAntiPhase) {
  const GaitParams gp = trot();
  for (int k = 0; k < 100000; ++k) {
    const double t = k * 1e-4 + 1e-7 * (k % 7);
    EXPECT_NE(gait_phase(t, gp, Side::kLeft).phase, gait_phase(t, gp, Side::kRight).phase) << t;
  }
}

TEST(GaitParams, Validation) {
  GaitParams gp;
  gp.duty = 1.5;
  EXPECT_THROW(gp.validate(), ValidationError);
  gp.duty = 0.5;
  gp.step_period = 0.0;
  EXPECT_THROW(gp.validate(), ValidationError);
}

TEST(FootTrajectory, InPlaceStanceHoldsNominal) {
  const GaitParams gp = trot();
  const FootTarget nominal{0.0, 0.0, 0.4};
  for (int k = 0; k < 300; ++k) {
    const double t = k * 1e-3;
    EXPECT_EQ(foot_trajectory(t, gp, nominal, {}, Side::kLeft), nominal);
  }
}

TEST(FootTrajectory, OffsetMovesTouchdownOnly) {
  const GaitParams gp = trot(0.06);
  const FootTarget nominal{0.0, 0.0, 0.4};
  const PlacementOffset off{0.02, -0.01};
  // Left swing spans [0.3, 0.6).
  const FootTarget lift = foot_trajectory(0.3, gp, nominal, off, Side::kLeft);
  const FootTarget lift0 = foot_trajectory(0.3, gp, nominal, {}, Side::kLeft);
  EXPECT_EQ(lift, lift0);
  EXPECT_NEAR(lift.x, -0.03, 1e-15);
  const FootTarget td = foot_trajectory(0.6 - 1e-12, gp, nominal, off, Side::kLeft);
  const FootTarget td0 = foot_trajectory(0.6 - 1e-12, gp, nominal, {}, Side::kLeft);
  EXPECT_NEAR(td.x - td0.x, 0.02, 1e-9);
  EXPECT_NEAR(td.y - td0.y, -0.01, 1e-9);
}

TEST(FootTrajectory, ContinuousAcrossPhaseSwitches) {
  const GaitParams gp = trot(0.08);
  const FootTarget nominal{0.0, 0.02, 0.4};
  const PlacementOffset off{0.015, 0.01};
  for (Side side : {Side::kLeft, Side::kRight}) {
    for (int k = 1; k < 20; ++k) {
      const double ts = k * 0.3;
      const FootTarget a = foot_trajectory(ts - 1e-10, gp, nominal, off, side);
      const FootTarget b = foot_trajectory(ts + 1e-10, gp, nominal, off, side);
      EXPECT_LT(dist(a, b), 1e-9) << ts;
    }
  }
}

TEST(FootPlanner, MatchesStatelessForConstantOffset) {
  const GaitParams gp = trot(0.08);
  const FootTarget nominal{0.0, 0.0, 0.4};
  const PlacementOffset off{0.01, 0.0};
  FootPlanner planner(gp, nominal, Side::kLeft);
  // After one full cycle the offset is latched. Swing starts from the last
  // commanded point, one tick behind the stateless touch-down.
  const double dt = 1e-3;
  const double swept = std::hypot(gp.step_length + off.dx, off.dy);
  const double lag = swept * dt / (gp.duty * gp.step_period);
  double worst = 0.0;
  for (int k = 0; k < 2400; ++k) {
    const double t = k * dt;
    const FootTarget p = planner.update(t, off);
    if (t >= 0.6) worst = std::max(worst, dist(p, foot_trajectory(t, gp, nominal, off, Side::kLeft)));
  }
  EXPECT_LE(worst, lag + 1e-12);
}

TEST(FootPlanner, OffsetLatchedAtSwingOnset) {
  const GaitParams gp = trot();
  const FootTarget nominal{0.0, 0.0, 0.4};
  FootPlanner planner(gp, nominal, Side::kRight);
  planner.update(0.0, {0.02, 0.0});
  EXPECT_EQ(planner.latched_offset(), (PlacementOffset{0.02, 0.0}));
  planner.update(0.1, {0.05, 0.05});
  EXPECT_EQ(planner.latched_offset(), (PlacementOffset{0.02, 0.0}));
  const FootTarget td = planner.update(0.3 - 1e-9, {0.05, 0.05});
  EXPECT_NEAR(td.x, 0.02, 1e-6);
  planner.update(0.31, {0.0, 0.0});
  planner.update(0.6, {0.03, 0.0});
  EXPECT_EQ(planner.latched_offset(), (PlacementOffset{0.03, 0.0}));
}

TEST(FootPlanner, CommandContinuousUnderChangingOffsets) {
  const GaitParams gp = trot(0.08);
  FootPlanner planner(gp, {0.0, 0.0, 0.4}, Side::kLeft);
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-0.1, 0.1);
  FootTarget prev = planner.current();
  double worst = 0.0;
  for (int k = 0; k < 6000; ++k) {
    const FootTarget p = planner.update(k * 1e-3, {u(rng), u(rng)});
    worst = std::max(worst, dist(p, prev));
    prev = p;
  }
  // Fastest segment: a 0.28 m swing with peak speed about 2x its mean.
  EXPECT_LT(worst, 0.01);
}

}  // namespace
}  // namespace tbiped::gait
