#pragma once

// Fixed-column CSV telemetry. One row per control tick.

#include <array>
#include <iosfwd>
#include <string_view>
#include <vector>

namespace tbiped {

inline constexpr int kTelemetrySchemaVersion = 1;

inline constexpr std::array<std::string_view, 19> kTelemetryColumns{
    "time",
    "left_hip_frontal", "left_hip_sagittal", "left_knee",
    "right_hip_frontal", "right_hip_sagittal", "right_knee",
    "body_x", "body_y", "body_z",
    "roll_raw", "roll_filtered", "pitch_filtered",
    "thrust_f1", "thrust_f2",
    "grf_left", "grf_right",
    "capture_dx", "capture_dy",
};

struct TelemetryRow {
  double time = 0.0;
  std::array<double, 3> left_joints{};   // hip frontal, hip sagittal, knee [rad]
  std::array<double, 3> right_joints{};
  std::array<double, 3> body{};          // x, y, z [m]
  double roll_raw = 0.0;
  double roll_filtered = 0.0;
  double pitch_filtered = 0.0;
  double thrust_f1 = 0.0;
  double thrust_f2 = 0.0;
  double grf_left = 0.0;
  double grf_right = 0.0;
  double capture_dx = 0.0;
  double capture_dy = 0.0;

  std::array<double, kTelemetryColumns.size()> values() const;
  static TelemetryRow from_values(const std::array<double, kTelemetryColumns.size()>& v);

  bool operator==(const TelemetryRow&) const = default;
};

/// "# telemetry schema v<N>" comment line followed by the column header.
std::string telemetry_header();

/// Comma separated, 9 significant digits, LF line endings.
void write_csv(std::ostream& out, const std::vector<TelemetryRow>& rows);

/// Parses CSV written by write_csv. Throws std::runtime_error on a header
/// mismatch or a malformed line.
std::vector<TelemetryRow> read_csv(std::istream& in);

}  // namespace tbiped
