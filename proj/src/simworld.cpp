#include "tbiped/simworld.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "tbiped/errors.hpp"

namespace tbiped::sim {
namespace {

using Eigen::Matrix3d;
using Eigen::Matrix4d;
using Eigen::Vector2d;
using Eigen::Vector3d;
using Eigen::Vector4d;

constexpr std::array<kin::Side, 2> kSides{kin::Side::kLeft, kin::Side::kRight};

Matrix3d roll_matrix(double roll) {
  const double c = std::cos(roll);
  const double s = std::sin(roll);
  Matrix3d r;
  r << 1.0, 0.0, 0.0, 0.0, c, -s, 0.0, s, c;
  return r;
}

// Hip-to-foot vector plus hip mount, in body axes (z up).
Vector3d body_vector(const kin::JointAngles& q, const RobotParams& p, kin::Side side) {
  const kin::FootTarget f = kin::forward_kinematics(q, p.leg, side);
  return {f.x, p.hip_y(side) + f.y, -f.z};
}

double servo(double q, double target, const RobotParams& p, double dt) {
  const double rate = std::clamp((target - q) / std::max(p.servo_time_constant, dt),
                                 -p.joint_rate_limit, p.joint_rate_limit);
  return q + dt * rate;
}

kin::JointAngles servo(const kin::JointAngles& q, const kin::JointAngles& target,
                       const RobotParams& p, double dt) {
  return {servo(q.hip_frontal, target.hip_frontal, p, dt),
          servo(q.hip_sagittal, target.hip_sagittal, p, dt), servo(q.knee, target.knee, p, dt)};
}

bool finite(const WorldState& s) {
  return s.position.allFinite() && s.velocity.allFinite() && std::isfinite(s.roll) &&
         std::isfinite(s.roll_rate);
}

struct FootTerm {
  bool normal_on = false;
  Vector3d r = Vector3d::Zero();      // COM to foot, world axes
  Vector3d v_leg = Vector3d::Zero();  // foot velocity from joint motion
  Vector4d jx, jy, jz;                // rows of the generalized-velocity Jacobian
  double depth = 0.0;
  double normal = 0.0;                // current estimate of the normal force
  bool stick = false;
  Vector2d slip_dir = Vector2d::Zero();
};

}  // namespace

void ContactParams::validate() const {
  if (!(stiffness > 0.0)) throw ValidationError("contact: stiffness > 0");
  if (!(damping >= 0.0)) throw ValidationError("contact: damping >= 0");
  if (!(friction >= 0.0)) throw ValidationError("contact: friction >= 0");
  if (!(stiction_velocity > 0.0)) throw ValidationError("contact: stiction_velocity > 0");
}

ContactForce contact_force(double penetration, double penetration_rate,
                           const Vector2d& tangential_velocity, const ContactParams& params) {
  ContactForce out;
  if (!(penetration > 0.0)) return out;
  out.normal = std::max(0.0, params.stiffness * penetration + params.damping * penetration_rate);
  const double speed = tangential_velocity.norm();
  const double limit = params.friction * out.normal;
  if (speed < params.stiction_velocity) {
    out.tangential = -limit * tangential_velocity / params.stiction_velocity;
  } else {
    out.tangential = -limit * tangential_velocity / speed;
  }
  return out;
}

void RobotParams::validate() const {
  if (!(mass > 0.0)) throw ValidationError("robot: mass > 0");
  if (!(roll_inertia > 0.0)) throw ValidationError("robot: roll_inertia > 0");
  if (!(thruster_arm >= 0.0)) throw ValidationError("robot: thruster_arm >= 0");
  if (!(hip_half_width >= 0.0)) throw ValidationError("robot: hip_half_width >= 0");
  if (!(stance_depth > leg.frontal_offset())) throw ValidationError("robot: stance_depth > l2");
  if (!(servo_time_constant >= 0.0)) throw ValidationError("robot: servo_time_constant >= 0");
  if (!(joint_rate_limit > 0.0)) throw ValidationError("robot: joint_rate_limit > 0");
  if (!(gravity >= 0.0)) throw ValidationError("robot: gravity >= 0");
  left_limits.validate();
  right_limits.validate();
  contact.validate();
}

Vector3d foot_position(const Vector3d& com, double roll, const kin::JointAngles& q,
                       const RobotParams& params, kin::Side side) {
  return com + roll_matrix(roll) * body_vector(q, params, side);
}

WorldState standing_state(const RobotParams& params, double clearance) {
  WorldState s;
  s.position = Vector3d(0.0, 0.0, params.stance_depth + clearance);
  for (kin::Side side : kSides) {
    LegState& leg = s.leg(side);
    leg.joints = kin::inverse_kinematics(params.nominal_foot(), params.leg, side);
    leg.foot = foot_position(s.position, s.roll, leg.joints, params, side);
    leg.penetration = std::max(0.0, -leg.foot.z());
  }
  return s;
}

double mechanical_energy(const WorldState& s, const RobotParams& p) {
  double e = 0.5 * p.mass * s.velocity.squaredNorm() + 0.5 * p.roll_inertia * s.roll_rate * s.roll_rate +
             p.mass * p.gravity * s.position.z();
  for (const LegState& leg : s.legs) e += 0.5 * p.contact.stiffness * leg.penetration * leg.penetration;
  return e;
}

SupportPolygon support_polygon(const WorldState& state) {
  SupportPolygon poly;
  for (const LegState& leg : state.legs) {
    if (leg.contact) poly.emplace_back(leg.foot.x(), leg.foot.y());
  }
  return poly;
}

namespace {

double segment_distance(const Vector2d& p, const Vector2d& a, const Vector2d& b) {
  const Vector2d ab = b - a;
  const double len2 = ab.squaredNorm();
  if (len2 == 0.0) return (p - a).norm();
  const double s = std::clamp((p - a).dot(ab) / len2, 0.0, 1.0);
  return (p - (a + s * ab)).norm();
}

double cross(const Vector2d& o, const Vector2d& a, const Vector2d& b) {
  return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
}

// Andrew's monotone chain; counter-clockwise, collinear points dropped.
std::vector<Vector2d> convex_hull(std::vector<Vector2d> pts) {
  std::sort(pts.begin(), pts.end(), [](const Vector2d& a, const Vector2d& b) {
    return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
  });
  std::vector<Vector2d> hull(2 * pts.size());
  std::size_t k = 0;
  for (const Vector2d& p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0.0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k > 1 ? k - 1 : k);
  return hull;
}

}  // namespace

bool statically_stable(const Vector2d& com_xy, const SupportPolygon& polygon, double margin) {
  if (polygon.empty()) return false;
  if (polygon.size() == 1) return (com_xy - polygon.front()).norm() <= margin;

  const std::vector<Vector2d> hull = convex_hull(polygon);
  if (hull.size() < 3) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < hull.size(); ++i) {
      best = std::min(best, segment_distance(com_xy, hull[i], hull[i + 1]));
    }
    if (hull.size() == 1) best = (com_xy - hull.front()).norm();
    return best <= margin;
  }
  bool inside = true;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const Vector2d& a = hull[i];
    const Vector2d& b = hull[(i + 1) % hull.size()];
    if (cross(a, b, com_xy) < 0.0) inside = false;
    best = std::min(best, segment_distance(com_xy, a, b));
  }
  return inside || best <= margin;
}

WorldState world_step(const WorldState& state, const Commands& commands, const RobotParams& p,
                      double dt) {
  WorldState next = state;
  const Matrix3d rot = roll_matrix(state.roll);
  const ContactParams& cp = p.contact;

  std::array<FootTerm, 2> feet;
  std::array<Vector3d, 2> rel_new;
  for (std::size_t i = 0; i < 2; ++i) {
    const kin::Side side = kSides[i];
    const kin::JointAngles q_new = servo(state.legs[i].joints, commands.joints[i], p, dt);
    next.legs[i].joints = q_new;
    const Vector3d rel_old = body_vector(state.legs[i].joints, p, side);
    rel_new[i] = body_vector(q_new, p, side);

    FootTerm& f = feet[i];
    f.r = rot * rel_new[i];
    f.v_leg = rot * (rel_new[i] - rel_old) / dt;
    f.jx << 1.0, 0.0, 0.0, 0.0;
    f.jy << 0.0, 1.0, 0.0, -f.r.z();
    f.jz << 0.0, 0.0, 1.0, f.r.y();
    f.depth = -(state.position.z() + f.r.z());
    const Vector3d v_body = state.velocity + Vector3d(0.0, -state.roll_rate * f.r.z(),
                                                      state.roll_rate * f.r.y());
    const Vector3d v_foot = v_body + f.v_leg;
    // `depth` already includes this step's leg motion; predict the rest
    // from the body velocity.
    const double predicted = f.depth - dt * v_body.z();
    if (predicted > 0.0) {
      f.normal_on = true;
      f.normal = contact_force(predicted, -v_foot.z(), v_foot.head<2>(), cp).normal;
      const double slip = v_foot.head<2>().norm();
      f.stick = slip < cp.stiction_velocity;
      if (!f.stick) f.slip_dir = v_foot.head<2>() / slip;
    }
  }

  Matrix4d mass = Matrix4d::Zero();
  mass.diagonal() << p.mass, p.mass, p.mass, p.roll_inertia;
  Vector4d momentum;
  momentum << p.mass * state.velocity, p.roll_inertia * state.roll_rate;

  const double total_thrust = commands.thrust.f1 + commands.thrust.f2;
  const Vector3d thrust_force = total_thrust * Vector3d(0.0, -std::sin(state.roll), std::cos(state.roll));
  Vector4d applied;
  applied << thrust_force + commands.external_force + Vector3d(0.0, 0.0, -p.mass * p.gravity),
      (commands.thrust.f1 - commands.thrust.f2) * p.thruster_arm;
  const Vector4d rhs_base = momentum + dt * applied;

  // Spring and damper are both evaluated at the end of the step. With vb
  // the body part of the foot velocity and vl the leg part:
  //   n = k (depth - dt vb) - c (vb + vl)
  // A foot that only reaches the ground during this step gets the spring
  // alone. Pass 0 is frictionless and only sizes the normals. Sliding
  // friction stays linear in n; stiction uses the previous pass's normal.
  auto damping = [&](const FootTerm& f) { return f.depth > 0.0 ? cp.damping : 0.0; };
  auto normal = [&](const FootTerm& f, const Vector4d& v) {
    const double vb = f.jz.dot(v);
    return cp.stiffness * (f.depth - dt * vb) - damping(f) * (vb + f.v_leg.z());
  };
  Vector4d qd = Vector4d::Zero();
  for (int pass = 0; pass < 8; ++pass) {
    const bool with_friction = pass > 0;
    Matrix4d a = mass;
    Vector4d rhs = rhs_base;
    for (const FootTerm& f : feet) {
      if (!f.normal_on) continue;
      const double ce = damping(f) + cp.stiffness * dt;
      const double n0 = cp.stiffness * f.depth - damping(f) * f.v_leg.z();
      a += dt * ce * f.jz * f.jz.transpose();
      rhs += dt * n0 * f.jz;
      if (!with_friction) continue;
      if (f.stick) {
        const double ct = cp.friction * f.normal / cp.stiction_velocity;
        a += dt * ct * (f.jx * f.jx.transpose() + f.jy * f.jy.transpose());
        rhs -= dt * ct * (f.v_leg.x() * f.jx + f.v_leg.y() * f.jy);
      } else {
        const Vector4d js = f.slip_dir.x() * f.jx + f.slip_dir.y() * f.jy;
        a -= dt * cp.friction * ce * js * f.jz.transpose();
        rhs -= dt * cp.friction * n0 * js;
      }
    }
    qd = a.partialPivLu().solve(rhs);

    bool changed = false;
    for (FootTerm& f : feet) {
      if (!f.normal_on) continue;
      const double n = normal(f, qd);
      if (n < 0.0) {
        f.normal_on = false;
        f.normal = 0.0;
        changed = true;
        continue;
      }
      if (with_friction && f.stick) {
        const Vector2d vt(f.jx.dot(qd) + f.v_leg.x(), f.jy.dot(qd) + f.v_leg.y());
        const double force = cp.friction * f.normal / cp.stiction_velocity * vt.norm();
        if (force > cp.friction * n && vt.norm() > 0.0) {
          f.stick = false;
          f.slip_dir = vt.normalized();
          changed = true;
        }
      }
      f.normal = n;
    }
    if (!with_friction) continue;
    if (!changed) break;
  }

  // Report the forces consistent with the solved velocity.
  for (std::size_t i = 0; i < 2; ++i) {
    const FootTerm& f = feet[i];
    LegState& leg = next.legs[i];
    leg.contact = false;
    leg.normal_force = 0.0;
    leg.friction = Vector2d::Zero();
    if (!f.normal_on) continue;
    const double n = normal(f, qd);
    leg.normal_force = std::max(0.0, n);
    leg.contact = leg.normal_force > 0.0;
    const Vector2d vt(f.jx.dot(qd) + f.v_leg.x(), f.jy.dot(qd) + f.v_leg.y());
    const double limit = cp.friction * std::max(0.0, n);
    if (f.stick) {
      leg.friction = -(limit / cp.stiction_velocity) * vt;
    } else {
      leg.friction = -limit * f.slip_dir;
    }
  }

  next.velocity = qd.head<3>();
  next.roll_rate = qd(3);
  next.position = state.position + dt * next.velocity;
  next.roll = state.roll + dt * next.roll_rate;
  next.time = state.time + dt;
  next.thrust = commands.thrust;

  if (!finite(next)) throw NumericalDivergence("world state not finite", next.time);

  const Matrix3d rot_new = roll_matrix(next.roll);
  for (std::size_t i = 0; i < 2; ++i) {
    LegState& leg = next.legs[i];
    leg.foot = next.position + rot_new * rel_new[i];
    leg.penetration = std::max(0.0, -leg.foot.z());
  }
  return next;
}

}  // namespace tbiped::sim
