#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "tbiped/errors.hpp"
#include "tbiped/lip.hpp"

namespace tbiped::lip {
namespace {

LipParams params(double z_c = 0.5, double g = 9.81, double m = 4.0) {
  LipParams p;
  p.mass = m;
  p.com_height = z_c;
  p.gravity = g;
  return p;
}

TEST(LipAccel, EquilibriumAtPivot) {
  const LipAccel a = lip_accel({}, params(), 0.0);
  EXPECT_EQ(a.ax, 0.0);
  EXPECT_EQ(a.ay, 0.0);
}

TEST(LipAccel, TorqueCancelsGravityMoment) {
  const LipParams p = params();
  const double y0 = 0.07;
  const LipAccel a = lip_accel({0.0, y0, 0.0, 0.0}, p, p.mass * p.gravity * y0);
  EXPECT_NEAR(a.ay, 0.0, 1e-12);
}

TEST(LipAccel, HandEvaluation) {
  const LipAccel a = lip_accel({0.1, 0.0, 0.0, 0.0}, params(0.5, 9.81), 0.0);
  EXPECT_NEAR(a.ax, 1.962, 1e-12);
}

TEST(LipParams, RejectsNonPositive) {
  EXPECT_THROW(params(0.0).validate(), ValidationError);
  EXPECT_THROW(params(0.5, -1.0).validate(), ValidationError);
  EXPECT_THROW(params(0.5, 9.81, 0.0).validate(), ValidationError);
  EXPECT_NO_THROW(params().validate());
}

TEST(StepRk4, RestStateUnchanged) {
  for (double dt : {1e-4, 1e-3, 0.05}) {
    EXPECT_EQ(step_rk4({}, params(), 0.0, dt), LipState{});
  }
}

TEST(StepRk4, MatchesClosedFormCosh) {
  const LipParams p = params(0.5, 9.81);
  const double omega = std::sqrt(p.gravity / p.com_height);
  LipState s{0.1, 0.0, 0.0, 0.0};
  for (int i = 0; i < 1000; ++i) s = step_rk4(s, p, 0.0, 1e-3);
  const double exact_x = 0.1 * std::cosh(omega * 1.0);
  const double exact_v = 0.1 * omega * std::sinh(omega * 1.0);
  EXPECT_LT(std::abs(s.x - exact_x) / exact_x, 1e-8);
  EXPECT_LT(std::abs(s.vx - exact_v) / exact_v, 1e-8);
}

TEST(StepRk4, StepHalvingConsistency) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-0.2, 0.2);
  const LipParams p = params(0.45);
  for (int k = 0; k < 100; ++k) {
    const LipState s0{u(rng), u(rng), u(rng), u(rng)};
    const double tau = 5.0 * u(rng);
    const double dt = 1e-3;
    const LipState twice = step_rk4(step_rk4(s0, p, tau, dt), p, tau, dt);
    const LipState halved = advance(s0, p, tau, 2.0 * dt, dt);
    EXPECT_NEAR(twice.x, halved.x, 1e-10);
    EXPECT_NEAR(twice.y, halved.y, 1e-10);
    EXPECT_NEAR(twice.vx, halved.vx, 1e-10);
    EXPECT_NEAR(twice.vy, halved.vy, 1e-10);
  }
}

TEST(StepRk4, NonFiniteResultSignalsDivergence) {
  EXPECT_THROW(step_rk4({1e300, 0.0, 1e300, 0.0}, params(), 0.0, 1e10), NumericalDivergence);
}

TEST(OrbitalEnergy, PureKinetic) {
  const LipParams p = params();
  EXPECT_DOUBLE_EQ(orbital_energy(0.0, 0.8, p), 0.5 * p.mass * 0.64);
}

TEST(OrbitalEnergy, HandEvaluation) {
  // 1/2*4*0.25 - 1/2*(4*9.81/0.5)*0.01 = 0.5 - 0.3924
  EXPECT_NEAR(orbital_energy(0.1, 0.5, params(0.5, 9.81, 4.0)), 0.1076, 1e-12);
}

TEST(OrbitalEnergy, CaptureConditionZeroesEnergy) {
  const LipParams p = params(0.47);
  for (double v : {-1.3, -0.2, 0.4, 2.0}) {
    const double x = v * std::sqrt(p.com_height / p.gravity);
    EXPECT_NEAR(orbital_energy(x, v, p), 0.0, 1e-12);
    EXPECT_EQ(classify_energy(orbital_energy(x, v, p)), EnergyClass::kComesToRest);
  }
}

TEST(OrbitalEnergy, SignClassification) {
  EXPECT_EQ(classify_energy(0.3), EnergyClass::kRecoverable);
  EXPECT_EQ(classify_energy(-0.3), EnergyClass::kUnstable);
  EXPECT_EQ(classify_energy(5e-10), EnergyClass::kComesToRest);
  EXPECT_EQ(classify_energy(-2e-9), EnergyClass::kUnstable);
}

TEST(CapturePoint, ZeroVelocity) {
  const CapturePoint cp = capture_point(0.0, 0.0, params());
  EXPECT_EQ(cp.x, 0.0);
  EXPECT_EQ(cp.y, 0.0);
}

TEST(CapturePoint, HandEvaluation) {
  EXPECT_NEAR(capture_point(1.0, 0.0, params(0.5, 9.81)).x, 0.22576, 1e-5);
}

TEST(CapturePoint, UnitTimeConstant) {
  const CapturePoint cp = capture_point(0.73, -0.4, params(9.81, 9.81));
  EXPECT_EQ(cp.x, 0.73);
  EXPECT_EQ(cp.y, -0.4);
}

TEST(CapturePoint, LinearInVelocity) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  const LipParams p = params(0.42);
  for (int k = 0; k < 200; ++k) {
    const double vx = u(rng), vy = u(rng);
    const CapturePoint base = capture_point(vx, vy, p);
    // Powers of two and sign flips scale exactly in floating point.
    for (double a : {-1.0, 0.5, 2.0, 4.0, -0.25}) {
      const CapturePoint scaled = capture_point(a * vx, a * vy, p);
      EXPECT_EQ(scaled.x, a * base.x);
      EXPECT_EQ(scaled.y, a * base.y);
    }
    const double a = u(rng);
    const CapturePoint scaled = capture_point(a * vx, a * vy, p);
    EXPECT_NEAR(scaled.x, a * base.x, 1e-15);
    EXPECT_NEAR(scaled.y, a * base.y, 1e-15);
  }
}

TEST(LipProperties, EnergyConservedOverOneSecond) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-0.3, 0.3);
  const LipParams p = params(0.4);
  for (int k = 0; k < 50; ++k) {
    LipState s{u(rng), 0.0, u(rng), 0.0};
    const double e0 = orbital_energy(s.x, s.vx, p);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      s = step_rk4(s, p, 0.0, 1e-3);
      worst = std::max(worst, std::abs(orbital_energy(s.x, s.vx, p) - e0));
    }
    EXPECT_LT(worst / std::max(std::abs(e0), 1e-12), 1e-6);
  }
}

TEST(LipProperties, CaptureBringsComToRest) {
  const LipParams p = params(0.4);
  for (double v : {-0.8, -0.1, 0.3, 1.2}) {
    LipState s{-capture_point(v, 0.0, p).x, 0.0, v, 0.0};
    const LipState end = advance(s, p, 0.0, 5.0 * p.time_constant(), 1e-3);
    EXPECT_LT(std::abs(end.x), 0.01 * std::abs(s.x));
    EXPECT_LT(std::abs(end.vx), 0.01 * std::abs(v));
  }
}

TEST(LipProperties, AxesDecoupledAndPermutable) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-0.2, 0.2);
  const LipParams p = params(0.4);
  for (int k = 0; k < 50; ++k) {
    const LipState a{u(rng), u(rng), u(rng), u(rng)};
    const LipState swapped{a.y, a.x, a.vy, a.vx};
    LipState sa = a, sb = swapped;
    LipState x_only{a.x, 0.0, a.vx, 0.0};
    for (int i = 0; i < 300; ++i) {
      sa = step_rk4(sa, p, 0.0, 1e-3);
      sb = step_rk4(sb, p, 0.0, 1e-3);
      x_only = step_rk4(x_only, p, 0.0, 1e-3);
    }
    EXPECT_EQ(sa.x, sb.y);
    EXPECT_EQ(sa.vx, sb.vy);
    EXPECT_EQ(sa.y, sb.x);
    EXPECT_EQ(sa.vy, sb.vx);
    EXPECT_EQ(sa.x, x_only.x);
    EXPECT_EQ(sa.vx, x_only.vx);
  }
}

}  // namespace
}  // namespace tbiped::lip
