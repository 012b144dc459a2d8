#include "tbiped/telemetry.hpp"

#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace tbiped {

std::array<double, kTelemetryColumns.size()> TelemetryRow::values() const {
  return {time,
          left_joints[0], left_joints[1], left_joints[2],
          right_joints[0], right_joints[1], right_joints[2],
          body[0], body[1], body[2],
          roll_raw, roll_filtered, pitch_filtered,
          thrust_f1, thrust_f2,
          grf_left, grf_right,
          capture_dx, capture_dy};
}

TelemetryRow TelemetryRow::from_values(const std::array<double, kTelemetryColumns.size()>& v) {
  TelemetryRow r;
  r.time = v[0];
  r.left_joints = {v[1], v[2], v[3]};
  r.right_joints = {v[4], v[5], v[6]};
  r.body = {v[7], v[8], v[9]};
  r.roll_raw = v[10];
  r.roll_filtered = v[11];
  r.pitch_filtered = v[12];
  r.thrust_f1 = v[13];
  r.thrust_f2 = v[14];
  r.grf_left = v[15];
  r.grf_right = v[16];
  r.capture_dx = v[17];
  r.capture_dy = v[18];
  return r;
}

std::string telemetry_header() {
  std::string h = "# telemetry schema v" + std::to_string(kTelemetrySchemaVersion) + "\n";
  for (std::size_t i = 0; i < kTelemetryColumns.size(); ++i) {
    if (i) h += ',';
    h += kTelemetryColumns[i];
  }
  h += '\n';
  return h;
}

void write_csv(std::ostream& out, const std::vector<TelemetryRow>& rows) {
  out << telemetry_header();
  std::string line;
  char buf[32];
  for (const TelemetryRow& row : rows) {
    line.clear();
    const auto v = row.values();
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) line += ',';
      std::snprintf(buf, sizeof buf, "%.9g", v[i]);
      line += buf;
    }
    line += '\n';
    out << line;
  }
}

std::vector<TelemetryRow> read_csv(std::istream& in) {
  const std::string expected = telemetry_header();
  const auto split = expected.find('\n');
  const std::string version_line = expected.substr(0, split);
  const std::string column_line = expected.substr(split + 1, expected.size() - split - 2);

  std::string line;
  if (!std::getline(in, line) || line != version_line) {
    throw std::runtime_error("telemetry: missing or unsupported schema line");
  }
  if (!std::getline(in, line) || line != column_line) {
    throw std::runtime_error("telemetry: header does not match the column list");
  }

  std::vector<TelemetryRow> rows;
  int line_no = 2;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::array<double, kTelemetryColumns.size()> v{};
    std::size_t pos = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      const std::size_t end = line.find(',', pos);
      const bool last = i + 1 == v.size();
      if ((end == std::string::npos) != last) {
        throw std::runtime_error("telemetry: wrong field count on line " + std::to_string(line_no));
      }
      const std::string field = line.substr(pos, last ? std::string::npos : end - pos);
      char* tail = nullptr;
      v[i] = std::strtod(field.c_str(), &tail);
      if (field.empty() || *tail != '\0') {
        throw std::runtime_error("telemetry: bad number on line " + std::to_string(line_no));
      }
      pos = end + 1;
    }
    rows.push_back(TelemetryRow::from_values(v));
  }
  return rows;
}

}  // namespace tbiped
