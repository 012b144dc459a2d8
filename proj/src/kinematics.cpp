#include "tbiped/kinematics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "tbiped/errors.hpp"

namespace tbiped::kin {
namespace {

using std::numbers::pi;

// acos with the argument clamped when it overshoots [-1, 1] by at most the
// tolerance; further out the triangle does not exist.
double checked_acos(double c, const char* what) {
  if (!std::isfinite(c) || std::abs(c) > 1.0 + kAcosTolerance) {
    throw UnreachableTarget(std::string(what) + ": cosine out of range");
  }
  return std::acos(std::clamp(c, -1.0, 1.0));
}

double knee_cosine(const LegGeometry& g, double hip_to_pivot) {
  const double l3 = g.upper_link();
  const double kd = g.knee_to_pivot();
  return (l3 * l3 + kd * kd - hip_to_pivot * hip_to_pivot) / (2.0 * l3 * kd);
}

}  // namespace

LegGeometry::LegGeometry(double frontal_offset, double upper_link, double lower_link)
    : LegGeometry(frontal_offset, upper_link, lower_link, upper_link + lower_link) {}

LegGeometry::LegGeometry(double frontal_offset, double upper_link, double lower_link,
                         double crossing_link)
    : l2_(frontal_offset), l3_(upper_link), l5_(lower_link), l_ka_(crossing_link) {
  // l2 may be zero (no frontal offset); the links must have length.
  if (!(l2_ >= 0.0)) throw ValidationError("leg: frontal_offset >= 0");
  if (!(l3_ > 0.0)) throw ValidationError("leg: upper_link > 0");
  if (!(l5_ > 0.0)) throw ValidationError("leg: lower_link > 0");
  if (!(l_ka_ > 0.0)) throw ValidationError("leg: crossing_link > 0");
  l_kd_ = l_ka_ * l3_ / (l3_ + l5_);
  l_da_ = l_ka_ * l5_ / (l3_ + l5_);
}

double frontal_distance(const FootTarget& target) { return std::hypot(target.y, target.z); }

double leg_plane_depth(const FootTarget& target, const LegGeometry& geom) {
  const double r = frontal_distance(target);
  const double l2 = geom.frontal_offset();
  if (!(r > l2)) throw UnreachableTarget("foot inside the frontal offset circle");
  return std::sqrt((r - l2) * (r + l2));
}

double sagittal_distance(const FootTarget& target, const LegGeometry& geom) {
  return std::hypot(target.x, leg_plane_depth(target, geom));
}

double hip_frontal_angle(const FootTarget& target, const LegGeometry& geom, Side side) {
  const double r = frontal_distance(target);
  if (!(r > geom.frontal_offset())) {
    throw UnreachableTarget("foot inside the frontal offset circle");
  }
  const double alpha = std::atan2(target.y, target.z);
  const double beta = checked_acos(geom.frontal_offset() / r, "hip frontal");
  return side == Side::kLeft ? alpha + beta : pi - alpha + beta;
}

PantographSplit pantograph_split(const LegGeometry& geom, double sagittal_dist) {
  if (!(sagittal_dist > 0.0) || !std::isfinite(sagittal_dist)) {
    throw UnreachableTarget("degenerate hip-to-foot distance");
  }
  const double total = geom.upper_link() + geom.lower_link();
  PantographSplit split{
      sagittal_dist * geom.upper_link() / total,
      sagittal_dist * geom.lower_link() / total,
      geom.knee_to_pivot(),
      geom.pivot_to_ankle(),
  };
  if (std::abs(knee_cosine(geom, split.hip_to_pivot)) > 1.0 + kAcosTolerance) {
    throw UnreachableTarget("knee triangle cannot close");
  }
  return split;
}

double knee_angle(const LegGeometry& geom, double hip_to_pivot) {
  return checked_acos(knee_cosine(geom, hip_to_pivot), "knee");
}

double hip_sagittal_angle(const FootTarget& target, const LegGeometry& geom) {
  const double depth = leg_plane_depth(target, geom);
  const PantographSplit split = pantograph_split(geom, std::hypot(target.x, depth));
  const double l3 = geom.upper_link();
  const double hd = split.hip_to_pivot;
  const double kd = split.knee_to_pivot;
  const double gamma = checked_acos((l3 * l3 + hd * hd - kd * kd) / (2.0 * l3 * hd), "hip sagittal");
  const double delta = std::atan2(target.x, depth);
  return gamma + delta;
}

JointAngles inverse_kinematics(const FootTarget& target, const LegGeometry& geom, Side side) {
  JointAngles q;
  q.hip_frontal = hip_frontal_angle(target, geom, side);
  q.hip_sagittal = hip_sagittal_angle(target, geom);
  const PantographSplit split = pantograph_split(geom, sagittal_distance(target, geom));
  q.knee = knee_angle(geom, split.hip_to_pivot);
  return q;
}

FootTarget forward_kinematics(const JointAngles& angles, const LegGeometry& geom, Side side) {
  // Leg plane: first coordinate forward, second coordinate depth below H.
  const auto dir = [](double theta) {
    return std::array<double, 2>{std::sin(theta), std::cos(theta)};
  };
  const auto thigh = dir(angles.hip_sagittal);
  const auto cross = dir(angles.hip_sagittal + pi + angles.knee);
  const double knee_fwd = geom.upper_link() * thigh[0];
  const double knee_depth = geom.upper_link() * thigh[1];
  const double pivot_fwd = knee_fwd + geom.knee_to_pivot() * cross[0];
  const double pivot_depth = knee_depth + geom.knee_to_pivot() * cross[1];
  const double fwd = pivot_fwd * geom.reach_ratio();
  const double depth = pivot_depth * geom.reach_ratio();

  // Frontal plane (y, z): u points O->H, w points down the leg plane.
  const double s = std::sin(angles.hip_frontal);
  const double c = std::cos(angles.hip_frontal);
  const double uy = s;
  const double uz = side == Side::kLeft ? c : -c;
  const double wy = -c;
  const double wz = side == Side::kLeft ? s : -s;

  const double l2 = geom.frontal_offset();
  return {fwd, l2 * uy + depth * wy, l2 * uz + depth * wz};
}

JointLimits JointLimits::defaults(Side side) {
  const double frontal_centre = side == Side::kLeft ? pi / 2.0 : 3.0 * pi / 2.0;
  return {{frontal_centre - 0.3, frontal_centre + 0.3}, {0.0, pi / 2.0}, {0.2, pi - 0.2}};
}

void JointLimits::validate() const {
  if (!(hip_frontal.min <= hip_frontal.max)) throw ValidationError("limits: hip_frontal min <= max");
  if (!(hip_sagittal.min <= hip_sagittal.max)) throw ValidationError("limits: hip_sagittal min <= max");
  if (!(knee.min <= knee.max)) throw ValidationError("limits: knee min <= max");
}

Saturated saturate_joints(const JointAngles& angles, const JointLimits& limits) {
  Saturated out{angles, false};
  const auto clamp = [&out](double& v, const Interval& lim) {
    const double c = std::clamp(v, lim.min, lim.max);
    if (c != v) out.clamped = true;
    v = c;
  };
  clamp(out.angles.hip_frontal, limits.hip_frontal);
  clamp(out.angles.hip_sagittal, limits.hip_sagittal);
  clamp(out.angles.knee, limits.knee);
  return out;
}

}  // namespace tbiped::kin
