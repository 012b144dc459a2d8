#include "tbiped/control.hpp"

#include <algorithm>
#include <cmath>

#include "tbiped/errors.hpp"

namespace tbiped::control {

EmaFilter::EmaFilter(double alpha) : alpha_(alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw ValidationError("ema: alpha in (0,1]");
}

double EmaFilter::step(double sample) {
  if (!state_) {
    state_ = sample;
  } else {
    state_ = alpha_ * sample + (1.0 - alpha_) * *state_;
  }
  return *state_;
}

void ImuNoise::validate() const {
  if (!(sigma >= 0.0)) throw ValidationError("imu: noise_sigma >= 0");
  if (!(spike_prob >= 0.0 && spike_prob <= 1.0)) throw ValidationError("imu: spike_prob in [0,1]");
  if (!(spike_mag >= 0.0)) throw ValidationError("imu: spike_mag >= 0");
}

ImuModel::ImuModel(const ImuNoise& noise, std::uint64_t seed) : noise_(noise), rng_(seed) {
  noise_.validate();
}

double ImuModel::corrupt(double value) {
  // Always draw the same number of variates so the stream layout does not
  // depend on the noise settings.
  const double g = gauss_(rng_);
  const double u = uniform_(rng_);
  const double sign = uniform_(rng_) < 0.5 ? -1.0 : 1.0;
  double out = value + noise_.sigma * g;
  if (u < noise_.spike_prob) out += sign * noise_.spike_mag;
  return out;
}

ImuSample ImuModel::measure(const ImuSample& truth) {
  ImuSample out = truth;
  out.roll = corrupt(truth.roll) + noise_.roll_bias;
  out.pitch = corrupt(truth.pitch) + noise_.pitch_bias;
  out.yaw = corrupt(truth.yaw);
  out.roll_rate = truth.roll_rate + noise_.sigma * gauss_(rng_);
  out.pitch_rate = truth.pitch_rate + noise_.sigma * gauss_(rng_);
  out.yaw_rate = truth.yaw_rate + noise_.sigma * gauss_(rng_);
  return out;
}

ImuSample AttitudeFilter::step(const ImuSample& raw) {
  ImuSample out = raw;
  out.roll = roll_.step(raw.roll);
  out.pitch = pitch_.step(raw.pitch);
  out.yaw = yaw_.step(raw.yaw);
  return out;
}

void CaptureConfig::validate() const {
  if (!(deadband >= 0.0)) throw ValidationError("capture: deadband >= 0");
  if (!(max_offset > 0.0)) throw ValidationError("capture: max_offset > 0");
  lip.validate();
}

gait::PlacementOffset capture_offset(double pitch, double roll, double vx, double vy,
                                     const CaptureConfig& cfg) {
  const lip::CapturePoint cp = lip::capture_point(vx, vy, cfg.lip);
  gait::PlacementOffset out;
  if (std::abs(pitch) > cfg.deadband) out.dx = std::clamp(cp.x, -cfg.max_offset, cfg.max_offset);
  if (std::abs(roll) > cfg.deadband) out.dy = std::clamp(cp.y, -cfg.max_offset, cfg.max_offset);
  return out;
}

void PidGains::validate() const {
  if (!(integral_limit >= 0.0)) throw ValidationError("pid: integral_limit >= 0");
  if (!(output_limit >= 0.0)) throw ValidationError("pid: output_limit >= 0");
  if (!std::isfinite(kp) || !std::isfinite(ki) || !std::isfinite(kd)) {
    throw ValidationError("pid: gains finite");
  }
}

double Pid::step(double error, double dt) {
  integral_ = std::clamp(integral_ + gains_.ki * error * dt, -gains_.integral_limit,
                         gains_.integral_limit);
  const double derivative = (error - prev_error_) / dt;
  prev_error_ = error;
  const double u = gains_.kp * error + integral_ + gains_.kd * derivative;
  return std::clamp(u, -gains_.output_limit, gains_.output_limit);
}

ThrustPair thruster_mix(double base, double roll_correction) {
  return {std::clamp(base + 0.5 * roll_correction, 0.0, kMaxThrust),
          std::clamp(base - 0.5 * roll_correction, 0.0, kMaxThrust)};
}

}  // namespace tbiped::control
