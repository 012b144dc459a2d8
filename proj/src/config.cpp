#include "tbiped/config.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <vector>

#include "tbiped/errors.hpp"

namespace tbiped {
namespace {

// Leg lengths are collected first and turned into a LegGeometry at the end,
// since the geometry derives cached lengths from all four values.
struct LegSpec {
  double frontal_offset, upper_link, lower_link, crossing_link;
};

struct Context {
  ScenarioConfig& cfg;
  LegSpec& leg;
};

using Accessor = std::function<double&(Context&)>;

struct Entry {
  std::string section;
  std::string key;
  Accessor number;  // empty for the non-numeric keys handled by name
};

#define NUM(sec, key, expr) Entry{sec, key, [](Context& x) -> double& { return expr; }}

const std::vector<Entry>& registry() {
  static const std::vector<Entry> entries = {
      Entry{"scenario", "kind", {}},
      NUM("scenario", "duration", x.cfg.duration),
      NUM("scenario", "dt", x.cfg.dt),
      NUM("scenario", "control_rate", x.cfg.control_rate),
      NUM("scenario", "gait_start_time", x.cfg.gait_start_time),
      NUM("scenario", "drop_height", x.cfg.drop_height),
      Entry{"scenario", "seed", {}},
      Entry{"scenario", "output", {}},

      NUM("robot", "mass", x.cfg.robot.mass),
      NUM("robot", "roll_inertia", x.cfg.robot.roll_inertia),
      NUM("robot", "thruster_arm", x.cfg.robot.thruster_arm),
      NUM("robot", "hip_half_width", x.cfg.robot.hip_half_width),
      NUM("robot", "stance_depth", x.cfg.robot.stance_depth),
      NUM("robot", "servo_time_constant", x.cfg.robot.servo_time_constant),
      NUM("robot", "joint_rate_limit", x.cfg.robot.joint_rate_limit),
      NUM("robot", "gravity", x.cfg.robot.gravity),

      NUM("leg", "frontal_offset", x.leg.frontal_offset),
      NUM("leg", "upper_link", x.leg.upper_link),
      NUM("leg", "lower_link", x.leg.lower_link),
      NUM("leg", "crossing_link", x.leg.crossing_link),

      NUM("limits", "left_hip_frontal_min", x.cfg.robot.left_limits.hip_frontal.min),
      NUM("limits", "left_hip_frontal_max", x.cfg.robot.left_limits.hip_frontal.max),
      NUM("limits", "left_hip_sagittal_min", x.cfg.robot.left_limits.hip_sagittal.min),
      NUM("limits", "left_hip_sagittal_max", x.cfg.robot.left_limits.hip_sagittal.max),
      NUM("limits", "left_knee_min", x.cfg.robot.left_limits.knee.min),
      NUM("limits", "left_knee_max", x.cfg.robot.left_limits.knee.max),
      NUM("limits", "right_hip_frontal_min", x.cfg.robot.right_limits.hip_frontal.min),
      NUM("limits", "right_hip_frontal_max", x.cfg.robot.right_limits.hip_frontal.max),
      NUM("limits", "right_hip_sagittal_min", x.cfg.robot.right_limits.hip_sagittal.min),
      NUM("limits", "right_hip_sagittal_max", x.cfg.robot.right_limits.hip_sagittal.max),
      NUM("limits", "right_knee_min", x.cfg.robot.right_limits.knee.min),
      NUM("limits", "right_knee_max", x.cfg.robot.right_limits.knee.max),

      NUM("contact", "stiffness", x.cfg.robot.contact.stiffness),
      NUM("contact", "damping", x.cfg.robot.contact.damping),
      NUM("contact", "friction", x.cfg.robot.contact.friction),
      NUM("contact", "stiction_velocity", x.cfg.robot.contact.stiction_velocity),

      NUM("gait", "step_length", x.cfg.gait.step_length),
      NUM("gait", "step_height", x.cfg.gait.step_height),
      NUM("gait", "step_period", x.cfg.gait.step_period),
      NUM("gait", "duty", x.cfg.gait.duty),
      NUM("gait", "lift_offset", x.cfg.gait.lift_offset),

      NUM("capture", "deadband", x.cfg.capture.deadband),
      NUM("capture", "max_offset", x.cfg.capture.max_offset),

      NUM("pid", "kp", x.cfg.pid.kp),
      NUM("pid", "ki", x.cfg.pid.ki),
      NUM("pid", "kd", x.cfg.pid.kd),
      NUM("pid", "integral_limit", x.cfg.pid.integral_limit),
      NUM("pid", "output_limit", x.cfg.pid.output_limit),

      NUM("thruster", "base", x.cfg.base_thrust),

      NUM("imu", "ema_alpha", x.cfg.imu.ema_alpha),
      NUM("imu", "noise_sigma", x.cfg.imu.noise.sigma),
      NUM("imu", "spike_prob", x.cfg.imu.noise.spike_prob),
      NUM("imu", "spike_mag", x.cfg.imu.noise.spike_mag),
      NUM("imu", "pitch_bias", x.cfg.imu.noise.pitch_bias),
      NUM("imu", "roll_bias", x.cfg.imu.noise.roll_bias),

      NUM("disturbance", "force_x", x.cfg.disturbance.force_x),
      NUM("disturbance", "force_y", x.cfg.disturbance.force_y),
      NUM("disturbance", "start", x.cfg.disturbance.start),
      NUM("disturbance", "duration", x.cfg.disturbance.duration),
  };
  return entries;
}

#undef NUM

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

ScenarioKind parse_kind(std::string_view v, int line) {
  if (v == "trot_in_place") return ScenarioKind::kTrotInPlace;
  if (v == "straight_walk") return ScenarioKind::kStraightWalk;
  if (v == "drop_then_trot") return ScenarioKind::kDropThenTrot;
  throw ParseError(line, "scenario.kind", "unknown scenario kind '" + std::string(v) + "'");
}

double parse_number(std::string_view v, int line, const std::string& key) {
  const std::string s(v);
  char* end = nullptr;
  const double d = std::strtod(s.c_str(), &end);
  if (s.empty() || *end != '\0' || !std::isfinite(d)) {
    throw ParseError(line, key, "expected a finite number, got '" + s + "'");
  }
  return d;
}

// Shortest %g form that reads back to the same double.
std::string format_number(double v) {
  char buf[40];
  for (int precision = 15; precision <= 17; ++precision) {
    std::snprintf(buf, sizeof buf, "%.*g", precision, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

LegSpec leg_spec(const kin::LegGeometry& g) {
  return {g.frontal_offset(), g.upper_link(), g.lower_link(), g.crossing_link()};
}

}  // namespace

std::string_view to_string(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::kTrotInPlace: return "trot_in_place";
    case ScenarioKind::kStraightWalk: return "straight_walk";
    case ScenarioKind::kDropThenTrot: return "drop_then_trot";
  }
  return "unknown";
}

int ScenarioConfig::substeps() const {
  return static_cast<int>(std::lround(1.0 / (dt * control_rate)));
}

void ScenarioConfig::sync_derived() {
  capture.lip.mass = robot.mass;
  capture.lip.com_height = robot.stance_depth;
  capture.lip.pendulum_length = robot.stance_depth;
  capture.lip.gravity = robot.gravity;
}

void ScenarioConfig::validate() const {
  if (!(duration > 0.0)) throw ValidationError("scenario: duration > 0");
  if (!(dt > 0.0)) throw ValidationError("scenario: dt > 0");
  if (!(control_rate > 0.0)) throw ValidationError("scenario: control_rate > 0");
  const double ratio = 1.0 / (dt * control_rate);
  if (ratio < 0.5 || std::abs(ratio - std::round(ratio)) > 1e-9 * ratio) {
    throw ValidationError("scenario: control_rate divides 1/dt evenly");
  }
  if (!(gait_start_time >= 0.0)) throw ValidationError("scenario: gait_start_time >= 0");
  if (!(drop_height >= 0.0)) throw ValidationError("scenario: drop_height >= 0");
  if (output.empty()) throw ValidationError("scenario: output non-empty");
  robot.validate();
  gait.validate();
  capture.validate();
  pid.validate();
  if (!(base_thrust >= 0.0)) throw ValidationError("thruster: base >= 0");
  if (!(imu.ema_alpha > 0.0 && imu.ema_alpha <= 1.0)) throw ValidationError("imu: ema_alpha in (0,1]");
  imu.noise.validate();
  if (!(disturbance.duration >= 0.0)) throw ValidationError("disturbance: duration >= 0");
}

ScenarioConfig default_config() {
  ScenarioConfig c;
  c.sync_derived();
  return c;
}

ScenarioConfig parse_config(std::string_view text) {
  ScenarioConfig cfg;
  LegSpec leg = leg_spec(cfg.robot.leg);
  bool crossing_given = false;
  Context ctx{cfg, leg};

  std::string section;
  std::set<std::string> known_sections;
  for (const Entry& e : registry()) known_sections.insert(e.section);
  std::set<std::string> seen;

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    std::string_view raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    const std::string_view line = trim(raw);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') throw ParseError(line_no, "", "unterminated section header");
      section = std::string(trim(line.substr(1, line.size() - 2)));
      if (!known_sections.count(section)) throw ParseError(line_no, section, "unknown section");
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(line_no, "", "expected key = value");
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    if (section.empty()) throw ParseError(line_no, key, "key outside of a section");
    const std::string full = section + "." + key;

    const Entry* entry = nullptr;
    for (const Entry& e : registry()) {
      if (e.section == section && e.key == key) entry = &e;
    }
    if (!entry) throw ParseError(line_no, full, "unknown key");
    if (!seen.insert(full).second) throw ParseError(line_no, full, "duplicate key");

    if (entry->number) {
      entry->number(ctx) = parse_number(value, line_no, full);
      if (full == "leg.crossing_link") crossing_given = true;
    } else if (full == "scenario.kind") {
      cfg.kind = parse_kind(value, line_no);
    } else if (full == "scenario.seed") {
      const std::string s(value);
      char* end = nullptr;
      const unsigned long long seed = std::strtoull(s.c_str(), &end, 10);
      if (s.empty() || *end != '\0' || s.front() == '-') {
        throw ParseError(line_no, full, "expected a non-negative integer");
      }
      cfg.seed = seed;
    } else if (full == "scenario.output") {
      cfg.output = std::string(value);
    }
  }

  if (!crossing_given) leg.crossing_link = leg.upper_link + leg.lower_link;
  cfg.robot.leg = kin::LegGeometry(leg.frontal_offset, leg.upper_link, leg.lower_link, leg.crossing_link);
  cfg.sync_derived();
  cfg.validate();
  return cfg;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open config file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string to_config_text(const ScenarioConfig& config) {
  ScenarioConfig copy = config;
  LegSpec leg = leg_spec(copy.robot.leg);
  Context ctx{copy, leg};

  std::string out;
  std::string section;
  for (const Entry& e : registry()) {
    if (e.section != section) {
      if (!section.empty()) out += '\n';
      section = e.section;
      out += "[" + section + "]\n";
    }
    out += e.key + " = ";
    if (e.number) {
      out += format_number(e.number(ctx));
    } else if (e.key == "kind") {
      out += to_string(copy.kind);
    } else if (e.key == "seed") {
      out += std::to_string(copy.seed);
    } else if (e.key == "output") {
      out += copy.output;
    }
    out += '\n';
  }
  return out;
}

}  // namespace tbiped
