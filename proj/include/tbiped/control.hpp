#pragma once

// Capture-point foot placement, roll PID, thruster mixing, IMU model and
// exponential moving average filtering.

#include <cstdint>
#include <numbers>
#include <optional>
#include <random>

#include "tbiped/gait.hpp"
#include "tbiped/lip.hpp"

namespace tbiped::control {

inline constexpr double kMaxThrust = 53.0;  // per EDF [N]

constexpr double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }

/// y_k = alpha x_k + (1 - alpha) y_{k-1}; the first sample seeds the state.
class EmaFilter {
 public:
  explicit EmaFilter(double alpha = 0.1);

  double step(double sample);
  double alpha() const { return alpha_; }
  std::optional<double> value() const { return state_; }
  void reset() { state_.reset(); }

 private:
  double alpha_;
  std::optional<double> state_;
};

struct ImuSample {
  double roll = 0.0;   // [rad]
  double pitch = 0.0;
  double yaw = 0.0;
  double roll_rate = 0.0;  // [rad/s]
  double pitch_rate = 0.0;
  double yaw_rate = 0.0;
  double timestamp = 0.0;  // [s]

  bool operator==(const ImuSample&) const = default;
};

struct ImuNoise {
  double sigma = 0.0;        // additive Gaussian std-dev [rad]
  double spike_prob = 0.0;   // per-sample, per-angle
  double spike_mag = 0.0;    // [rad]
  double pitch_bias = 0.0;   // injected constant offsets [rad]
  double roll_bias = 0.0;

  void validate() const;

  bool operator==(const ImuNoise&) const = default;
};

/// Gaussian noise plus random-sign spikes on the attitude channels.
/// Identical seeds produce identical streams.
class ImuModel {
 public:
  ImuModel(const ImuNoise& noise, std::uint64_t seed);

  ImuSample measure(const ImuSample& truth);

 private:
  double corrupt(double value);

  ImuNoise noise_;
  std::mt19937_64 rng_;
  std::normal_distribution<double> gauss_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

/// EMA over roll, pitch and yaw of an IMU stream.
class AttitudeFilter {
 public:
  explicit AttitudeFilter(double alpha = 0.1) : roll_(alpha), pitch_(alpha), yaw_(alpha) {}

  ImuSample step(const ImuSample& raw);

 private:
  EmaFilter roll_, pitch_, yaw_;
};

struct CaptureConfig {
  double deadband = deg_to_rad(3.0);  // [rad]
  double max_offset = 0.12;           // [m]
  lip::LipParams lip;

  void validate() const;

  bool operator==(const CaptureConfig&) const = default;
};

/// dx from pitch and vx, dy from roll and vy; a component is produced only
/// when its angle magnitude exceeds the deadband, then clamped to max_offset.
gait::PlacementOffset capture_offset(double pitch, double roll, double vx, double vy,
                                     const CaptureConfig& cfg);

struct PidGains {
  // Tuned against the 10 s trot-in-place run with the default robot.
  double kp = 1300.0;            // [N/rad]
  double ki = 5.0;               // [N/(rad s)]
  double kd = 150.0;             // [N s/rad]
  double integral_limit = 5.0;   // bound on the integral term [N]
  double output_limit = 60.0;    // [N]

  void validate() const;

  bool operator==(const PidGains&) const = default;
};

/// The derivative term differentiates the error; the previous error starts
/// at zero, so a step input produces a derivative kick on the first call.
class Pid {
 public:
  explicit Pid(const PidGains& gains) : gains_(gains) {}

  double step(double error, double dt);

  double integral_term() const { return integral_; }
  void reset() {
    integral_ = 0.0;
    prev_error_ = 0.0;
  }

 private:
  PidGains gains_;
  double integral_ = 0.0;
  double prev_error_ = 0.0;
};

struct ThrustPair {
  double f1 = 0.0;  // left-side thruster [N]
  double f2 = 0.0;  // right-side thruster [N]
};

/// f1 = base + c/2, f2 = base - c/2, each clamped to [0, kMaxThrust].
ThrustPair thruster_mix(double base, double roll_correction);

}  // namespace tbiped::control
