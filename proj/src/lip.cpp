#include "tbiped/lip.hpp"

#include <cmath>

#include "tbiped/errors.hpp"

namespace tbiped::lip {

void LipParams::validate() const {
  if (!(mass > 0.0)) throw ValidationError("lip: mass > 0");
  if (!(com_height > 0.0)) throw ValidationError("lip: com_height > 0");
  if (!(gravity > 0.0)) throw ValidationError("lip: gravity > 0");
}

double LipParams::time_constant() const { return std::sqrt(com_height / gravity); }

LipAccel lip_accel(const LipState& state, const LipParams& params, double roll_torque) {
  const double omega2 = params.gravity / params.com_height;
  return {omega2 * state.x,
          omega2 * state.y - roll_torque / (params.mass * params.com_height)};
}

namespace {

struct Derivative {
  double dx, dy, dvx, dvy;
};

Derivative derivative(const LipState& s, const LipParams& p, double tau) {
  const LipAccel a = lip_accel(s, p, tau);
  return {s.vx, s.vy, a.ax, a.ay};
}

LipState offset(const LipState& s, const Derivative& d, double h) {
  return {s.x + h * d.dx, s.y + h * d.dy, s.vx + h * d.dvx, s.vy + h * d.dvy};
}

}  // namespace

LipState step_rk4(const LipState& state, const LipParams& params, double roll_torque,
                  double dt) {
  const Derivative k1 = derivative(state, params, roll_torque);
  const Derivative k2 = derivative(offset(state, k1, 0.5 * dt), params, roll_torque);
  const Derivative k3 = derivative(offset(state, k2, 0.5 * dt), params, roll_torque);
  const Derivative k4 = derivative(offset(state, k3, dt), params, roll_torque);

  const double w = dt / 6.0;
  LipState next{
      state.x + w * (k1.dx + 2.0 * k2.dx + 2.0 * k3.dx + k4.dx),
      state.y + w * (k1.dy + 2.0 * k2.dy + 2.0 * k3.dy + k4.dy),
      state.vx + w * (k1.dvx + 2.0 * k2.dvx + 2.0 * k3.dvx + k4.dvx),
      state.vy + w * (k1.dvy + 2.0 * k2.dvy + 2.0 * k3.dvy + k4.dvy),
  };
  if (!std::isfinite(next.x) || !std::isfinite(next.y) || !std::isfinite(next.vx) ||
      !std::isfinite(next.vy)) {
    throw NumericalDivergence("lip state not finite");
  }
  return next;
}

LipState advance(const LipState& state, const LipParams& params, double roll_torque,
                 double horizon, double max_step) {
  if (!(max_step > 0.0)) throw ValidationError("lip: step > 0");
  if (horizon <= 0.0) return state;
  const auto steps = static_cast<long>(std::ceil(horizon / max_step - 1e-12));
  const double h = horizon / static_cast<double>(steps);
  LipState s = state;
  for (long i = 0; i < steps; ++i) s = step_rk4(s, params, roll_torque, h);
  return s;
}

double orbital_energy(double x, double vx, const LipParams& params) {
  return 0.5 * params.mass * vx * vx -
         0.5 * (params.mass * params.gravity / params.com_height) * x * x;
}

EnergyClass classify_energy(double energy) {
  if (std::abs(energy) < kRestTolerance) return EnergyClass::kComesToRest;
  return energy > 0.0 ? EnergyClass::kRecoverable : EnergyClass::kUnstable;
}

CapturePoint capture_point(double vx, double vy, const LipParams& params) {
  const double tc = params.time_constant();
  return {vx * tc, vy * tc};
}

}  // namespace tbiped::lip
