#pragma once

// Closed-loop experiment runner:
//   IMU model -> EMA -> capture offset -> foot planner -> IK -> saturation
//   -> world step, with roll PID -> thruster mix in parallel.

#include <optional>
#include <vector>

#include "tbiped/config.hpp"
#include "tbiped/telemetry.hpp"

namespace tbiped {

struct ScenarioSummary {
  double mean_thrust = 0.0;      // steady-window mean of (f1 + f2) / 2 [N]
  double mean_grf_total = 0.0;   // steady-window mean of left + right GRF, per physics step [N]
  double mean_vertical_support = 0.0;  // same window, GRF plus vertical thrust [N]
  double steady_start = 0.0;     // start of the steady window [s]
  double max_abs_roll = 0.0;     // true roll over the whole run [rad]
  double final_body_z = 0.0;
  double min_body_z = 0.0;
  double max_body_z = 0.0;
  double max_penetration = 0.0;  // over every physics step [m]
  double min_grf = 0.0;
  std::optional<double> first_contact_time;
  int unreachable_targets = 0;   // ticks where IK failed and the last command was held
  int saturated_ticks = 0;
};

struct ScenarioResult {
  std::vector<TelemetryRow> rows;
  ScenarioSummary summary;
};

/// Deterministic for a given config (including its seed). Throws
/// NumericalDivergence carrying the failing simulation time.
ScenarioResult run_scenario(const ScenarioConfig& config);

}  // namespace tbiped
