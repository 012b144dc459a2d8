#include "tbiped/gait.hpp"

#include <cmath>
#include <stdexcept>

#include "tbiped/errors.hpp"

namespace tbiped::gait {
namespace {

double binomial(int n, int k) {
  double c = 1.0;
  for (int j = 1; j <= k; ++j) c = c * static_cast<double>(n - k + j) / static_cast<double>(j);
  return c;
}

double ipow(double base, int e) {
  double r = 1.0;
  for (int j = 0; j < e; ++j) r *= base;
  return r;
}

// Position inside the cycle in [0, 1]. The right leg is derived from the
// left one so the two never round into the same sub-phase.
double cycle_fraction(double t, double period, kin::Side leg) {
  const double c = t / period;
  const double left = c - std::floor(c);
  if (leg == kin::Side::kLeft) return left;
  return left < 0.5 ? left + 0.5 : left - 0.5;
}

Point lerp(const Point& a, const Point& b, double s) { return a + s * (b - a); }

}  // namespace

double bernstein(int i, int n, double t) {
  if (n < 0 || i < 0 || i > n) throw std::domain_error("bernstein: need 0 <= i <= n");
  if (!(t >= 0.0 && t <= 1.0)) throw std::domain_error("bernstein: t outside [0, 1]");
  return binomial(n, i) * ipow(t, i) * ipow(1.0 - t, n - i);
}

BezierCurve::BezierCurve(std::vector<Point> control_points) : points_(std::move(control_points)) {
  if (points_.size() < 2) throw std::invalid_argument("bezier: order must be >= 1");
}

Point bezier_eval(const BezierCurve& curve, double t) {
  const int n = curve.order();
  Point acc = Point::Zero();
  for (int i = 0; i <= n; ++i) acc += bernstein(i, n, t) * curve.control_points()[i];
  return acc;
}

void GaitParams::validate() const {
  if (!(step_period > 0.0)) throw ValidationError("gait: step_period > 0");
  if (!(duty > 0.0 && duty < 1.0)) throw ValidationError("gait: duty in (0,1)");
  if (!(step_height >= 0.0)) throw ValidationError("gait: step_height >= 0");
  if (!std::isfinite(step_length) || !std::isfinite(lift_offset)) {
    throw ValidationError("gait: step_length and lift_offset finite");
  }
}

BezierCurve build_step_curve(const Point& start, const Point& end, const GaitParams& params) {
  const double lift = params.step_height + params.lift_offset;
  const Point apex = 0.5 * (start + end) - Point(0.0, 0.0, lift);
  return BezierCurve({start, start, apex, end, end});
}

GaitPhase gait_phase(double t, const GaitParams& params, kin::Side leg) {
  const double f = cycle_fraction(t, params.step_period, leg);
  if (f < params.duty) return {LegPhase::kStance, f / params.duty};
  return {LegPhase::kSwing, (f - params.duty) / (1.0 - params.duty)};
}

Point to_point(const kin::FootTarget& p) { return {p.x, p.y, p.z}; }
kin::FootTarget to_target(const Point& p) { return {p.x(), p.y(), p.z()}; }

kin::FootTarget foot_trajectory(double t, const GaitParams& params,
                                const kin::FootTarget& nominal,
                                const PlacementOffset& offset, kin::Side leg) {
  const Point base = to_point(nominal);
  const Point half(0.5 * params.step_length, 0.0, 0.0);
  const Point liftoff = base - half;
  const Point touchdown = base + half + Point(offset.dx, offset.dy, 0.0);

  const GaitPhase ph = gait_phase(t, params, leg);
  if (ph.phase == LegPhase::kStance) return to_target(lerp(touchdown, liftoff, ph.phase_time));
  return to_target(bezier_eval(build_step_curve(liftoff, touchdown, params), ph.phase_time));
}

FootPlanner::FootPlanner(const GaitParams& params, const kin::FootTarget& nominal, kin::Side leg)
    : params_(params), nominal_(nominal), leg_(leg), current_(nominal) {}

kin::FootTarget FootPlanner::update(double t, const PlacementOffset& offset) {
  const GaitPhase ph = gait_phase(t, params_, leg_);
  const Point base = to_point(nominal_);
  const Point half(0.5 * params_.step_length, 0.0, 0.0);

  if (ph.phase == LegPhase::kSwing) {
    if (!in_swing_ || !started_) {
      latched_ = offset;
      swing_start_ = to_point(current_);
      swing_end_ = base + half + Point(offset.dx, offset.dy, 0.0);
      in_swing_ = true;
    }
    current_ = to_target(bezier_eval(build_step_curve(swing_start_, swing_end_, params_), ph.phase_time));
  } else {
    if (in_swing_ || !started_) {
      touchdown_ = started_ ? swing_end_ : to_point(current_);
      in_swing_ = false;
    }
    current_ = to_target(lerp(touchdown_, base - half, ph.phase_time));
  }
  started_ = true;
  return current_;
}

}  // namespace tbiped::gait
