#pragma once

// Linear inverted pendulum with an optional roll torque channel, orbital
// energy and capture point.

namespace tbiped::lip {

struct LipParams {
  double mass = 4.0;             // [kg]
  double com_height = 0.4;       // z_c [m]
  double gravity = 9.81;         // [m/s^2]
  double pendulum_length = 0.4;  // informational only [m]

  /// Throws ValidationError unless mass, com_height and gravity are positive.
  void validate() const;

  /// sqrt(z_c / g) [s]
  double time_constant() const;

  bool operator==(const LipParams&) const = default;
};

/// COM position and velocity relative to the support point.
struct LipState {
  double x = 0.0;
  double y = 0.0;
  double vx = 0.0;
  double vy = 0.0;

  bool operator==(const LipState&) const = default;
};

struct LipAccel {
  double ax = 0.0;
  double ay = 0.0;
};

struct CapturePoint {
  double x = 0.0;
  double y = 0.0;
};

/// Single-support equations of motion. The roll torque acts on the lateral
/// (y) equation only.
LipAccel lip_accel(const LipState& state, const LipParams& params, double roll_torque);

/// One classical RK4 step. Throws NumericalDivergence if the result is not finite.
LipState step_rk4(const LipState& state, const LipParams& params, double roll_torque, double dt);

/// Integrates over `horizon` using ceil(horizon / max_step) equal RK4 steps.
LipState advance(const LipState& state, const LipParams& params, double roll_torque,
                 double horizon, double max_step);

/// E = 1/2 m vx^2 - 1/2 (m g / z_c) x^2
double orbital_energy(double x, double vx, const LipParams& params);

enum class EnergyClass {
  kRecoverable,   // E > 0: COM moving toward the foot
  kUnstable,      // E < 0: COM moving away
  kComesToRest,   // E == 0 (within kRestTolerance)
};

inline constexpr double kRestTolerance = 1e-9;  // [J]

EnergyClass classify_energy(double energy);

/// x_cap = vx * sqrt(z_c/g), y_cap = vy * sqrt(z_c/g)
CapturePoint capture_point(double vx, double vy, const LipParams& params);

}  // namespace tbiped::lip
