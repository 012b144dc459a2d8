#pragma once

// Bezier swing curves and the two-leg trot schedule.

#include <vector>

#include <Eigen/Core>

#include "tbiped/kinematics.hpp"

namespace tbiped::gait {

using Point = Eigen::Vector3d;

/// B_i^n(t) = C(n, i) t^i (1 - t)^(n - i). Throws std::domain_error
/// unless 0 <= i <= n and t in [0, 1].
double bernstein(int i, int n, double t);

class BezierCurve {
 public:
  /// Needs at least two control points (order >= 1).
  explicit BezierCurve(std::vector<Point> control_points);

  int order() const { return static_cast<int>(points_.size()) - 1; }
  const std::vector<Point>& control_points() const { return points_; }

 private:
  std::vector<Point> points_;
};

/// Bernstein-weighted sum of the control points. Throws std::domain_error
/// for t outside [0, 1].
Point bezier_eval(const BezierCurve& curve, double t);

struct GaitParams {
  double step_length = 0.0;   // forward stride swept during stance [m]
  double step_height = 0.04;  // [m]
  double step_period = 0.6;   // full cycle [s]
  double duty = 0.5;          // stance fraction of the period
  double lift_offset = 0.01;  // extra apex lift on the middle control point [m]

  void validate() const;

  bool operator==(const GaitParams&) const = default;
};

enum class LegPhase { kStance, kSwing };

struct GaitPhase {
  LegPhase phase = LegPhase::kStance;
  double phase_time = 0.0;  // normalized position inside the current sub-phase
};

/// Foot placement shift in the horizontal plane [m].
struct PlacementOffset {
  double dx = 0.0;
  double dy = 0.0;

  bool operator==(const PlacementOffset&) const = default;
};

/// Fourth-order step: P0 = P1 = start, P3 = P4 = end, P2 at the midpoint
/// raised by step_height + lift_offset (hip frame z points down).
BezierCurve build_step_curve(const Point& start, const Point& end, const GaitParams& params);

/// Anti-phase schedule: the left leg starts in stance, the right leg half a
/// period later.
GaitPhase gait_phase(double t, const GaitParams& params, kin::Side leg);

/// Stateless foot trajectory for a constant placement offset. Swing runs
/// from the lift-off point (nominal - L/2) to the touchdown point
/// (nominal + L/2 + offset); stance sweeps back linearly.
kin::FootTarget foot_trajectory(double t, const GaitParams& params,
                                const kin::FootTarget& nominal,
                                const PlacementOffset& offset, kin::Side leg);

/// Per-leg trajectory generator used in closed loop. The placement offset
/// is latched at each swing onset and the swing starts from wherever the
/// foot command currently is, so the command stays continuous when the
/// offset changes between steps.
class FootPlanner {
 public:
  FootPlanner(const GaitParams& params, const kin::FootTarget& nominal, kin::Side leg);

  /// `t` is time since gait start and must not decrease between calls.
  kin::FootTarget update(double t, const PlacementOffset& offset);

  const kin::FootTarget& current() const { return current_; }
  const PlacementOffset& latched_offset() const { return latched_; }

 private:
  GaitParams params_;
  kin::FootTarget nominal_;
  kin::Side leg_;

  bool in_swing_ = false;
  bool started_ = false;
  Point swing_start_ = Point::Zero();
  Point swing_end_ = Point::Zero();
  Point touchdown_ = Point::Zero();
  PlacementOffset latched_;
  kin::FootTarget current_;
};

Point to_point(const kin::FootTarget& p);
kin::FootTarget to_target(const Point& p);

}  // namespace tbiped::gait
