#pragma once

// Closed-form inverse kinematics for the three-joint pantograph leg.
//
// Hip frame: x forward, y toward the robot's left, z positive *downward*
// from the frontal hip pivot O. The frontal joint rolls the leg plane about
// x; the sagittal hip pivot H sits l2 away from O, perpendicular to the leg
// plane. Inside the leg plane the upper link H-K (l3), the crossing link
// K-A and the lower link A-P (l5) form two similar triangles H-D-K and P-D-A
// around the point D where K-A crosses the virtual line H-P.

#include <array>

namespace tbiped::kin {

enum class Side { kLeft, kRight };

constexpr Side mirror(Side s) { return s == Side::kLeft ? Side::kRight : Side::kLeft; }

/// Link lengths of one leg. Crossing-link segments K-D and D-A are derived
/// from the fixed l3:l5 ratio and cached.
class LegGeometry {
 public:
  /// Crossing link K-A defaults to l3 + l5, which makes K-D == l3 and D-A == l5.
  LegGeometry(double frontal_offset = 0.04, double upper_link = 0.20,
              double lower_link = 0.30);
  LegGeometry(double frontal_offset, double upper_link, double lower_link,
              double crossing_link);

  double frontal_offset() const { return l2_; }  // O-H
  double upper_link() const { return l3_; }      // H-K
  double lower_link() const { return l5_; }      // A-P
  double crossing_link() const { return l_ka_; } // K-A
  double knee_to_pivot() const { return l_kd_; } // K-D
  double pivot_to_ankle() const { return l_da_; }// D-A

  /// Ratio H-P / H-D along the virtual line, i.e. (l3 + l5) / l3.
  double reach_ratio() const { return (l3_ + l5_) / l3_; }

  bool operator==(const LegGeometry&) const = default;

 private:
  double l2_, l3_, l5_, l_ka_, l_kd_, l_da_;
};

/// Foot point P in the hip frame [m].
struct FootTarget {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  bool operator==(const FootTarget&) const = default;
};

struct JointAngles {
  double hip_frontal = 0.0;   // psi_H [rad]
  double hip_sagittal = 0.0;  // phi_H [rad]
  double knee = 0.0;          // phi_K [rad]

  bool operator==(const JointAngles&) const = default;
};

/// Segment lengths along the virtual line and the crossing link.
struct PantographSplit {
  double hip_to_pivot = 0.0;    // H-D
  double pivot_to_foot = 0.0;   // D-P
  double knee_to_pivot = 0.0;   // K-D
  double pivot_to_ankle = 0.0;  // D-A
};

/// Tolerance used when clamping acos arguments to [-1, 1].
inline constexpr double kAcosTolerance = 1e-9;

/// Distance from O to P in the frontal (y-z) plane.
double frontal_distance(const FootTarget& target);

/// Depth of P below H measured inside the leg plane.
double leg_plane_depth(const FootTarget& target, const LegGeometry& geom);

/// Distance H-P inside the leg plane.
double sagittal_distance(const FootTarget& target, const LegGeometry& geom);

/// psi_H: alpha + beta for the left leg, pi - alpha + beta for the right.
double hip_frontal_angle(const FootTarget& target, const LegGeometry& geom, Side side);

/// Splits the H-P distance in the l3:l5 ratio. Throws UnreachableTarget
/// when the knee triangle H-K-D cannot close.
PantographSplit pantograph_split(const LegGeometry& geom, double sagittal_dist);

/// phi_K from the cosine rule in triangle H-K-D.
double knee_angle(const LegGeometry& geom, double hip_to_pivot);

/// phi_H = gamma + delta.
double hip_sagittal_angle(const FootTarget& target, const LegGeometry& geom);

JointAngles inverse_kinematics(const FootTarget& target, const LegGeometry& geom, Side side);

/// Rebuilds the foot point from joint angles by constructing K, D and P
/// explicitly; independent of the inverse formulas.
FootTarget forward_kinematics(const JointAngles& angles, const LegGeometry& geom, Side side);

struct Interval {
  double min = 0.0;
  double max = 0.0;

  bool operator==(const Interval&) const = default;
};

struct JointLimits {
  Interval hip_frontal;
  Interval hip_sagittal;
  Interval knee;

  /// Collision-avoidance defaults. The right frontal range is centred on
  /// 3*pi/2 because the right-leg formula carries an extra pi.
  static JointLimits defaults(Side side);

  /// Throws ValidationError unless min <= max for each joint.
  void validate() const;

  bool operator==(const JointLimits&) const = default;
};

struct Saturated {
  JointAngles angles;
  bool clamped = false;
};

Saturated saturate_joints(const JointAngles& angles, const JointLimits& limits);

}  // namespace tbiped::kin
