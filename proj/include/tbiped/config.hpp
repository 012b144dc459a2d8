#pragma once

// Scenario configuration: sectioned key = value text, SI units.
//
//   # comment
//   [scenario]
//   kind = trot_in_place
//   duration = 10
//
// Unknown sections or keys are rejected. Missing keys keep their defaults.

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "tbiped/control.hpp"
#include "tbiped/gait.hpp"
#include "tbiped/simworld.hpp"

namespace tbiped {

enum class ScenarioKind { kTrotInPlace, kStraightWalk, kDropThenTrot };

std::string_view to_string(ScenarioKind kind);

struct ImuConfig {
  double ema_alpha = 0.1;
  control::ImuNoise noise;

  bool operator==(const ImuConfig&) const = default;
};

/// Constant force on the COM during [start, start + duration).
struct Disturbance {
  double force_x = 0.0;  // [N]
  double force_y = 0.0;
  double start = 0.0;    // [s]
  double duration = 0.0;

  bool operator==(const Disturbance&) const = default;
};

struct ScenarioConfig {
  ScenarioKind kind = ScenarioKind::kTrotInPlace;
  double duration = 10.0;        // [s]
  double dt = 1e-3;              // physics step [s]
  double control_rate = 500.0;   // [Hz]
  double gait_start_time = 0.1;  // [s]
  double drop_height = 0.5;      // foot clearance at release, drop scenario only [m]
  std::uint64_t seed = 1;
  std::string output = "telemetry.csv";

  sim::RobotParams robot;
  gait::GaitParams gait{.step_length = 0.08};
  control::CaptureConfig capture;  // lip parameters are derived from `robot`
  control::PidGains pid;
  double base_thrust = 0.0;        // per thruster [N]
  ImuConfig imu;
  Disturbance disturbance;

  /// Physics steps per control tick.
  int substeps() const;

  /// Copies mass, stance depth and gravity into the capture controller's pendulum.
  void sync_derived();

  /// Throws ValidationError naming the violated invariant.
  void validate() const;

  bool operator==(const ScenarioConfig&) const = default;
};

/// Defaults with derived fields filled in.
ScenarioConfig default_config();

/// Parses config text; throws ParseError (line, key) or ValidationError.
ScenarioConfig parse_config(std::string_view text);

/// Reads and parses a file; I/O failures throw std::runtime_error.
ScenarioConfig load_config(const std::filesystem::path& path);

/// Full config as text; parse_config(to_config_text(c)) == c.
std::string to_config_text(const ScenarioConfig& config);

}  // namespace tbiped
