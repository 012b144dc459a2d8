#pragma once

// Planar-constrained rigid body with two massless, position-servoed
// pantograph legs, penalty ground contact and a pair of roll thrusters.
// Pitch and yaw are held at zero; x, y, z and roll are free. World frame:
// x forward, y left, z up, ground plane at z = 0.

#include <array>
#include <vector>

#include <Eigen/Core>

#include "tbiped/control.hpp"
#include "tbiped/kinematics.hpp"

namespace tbiped::sim {

struct ContactParams {
  double stiffness = 2.0e5;        // k [N/m]
  double damping = 4000.0;         // c [N s/m]
  double friction = 0.8;           // mu
  double stiction_velocity = 0.01; // below this slip speed friction is linear [m/s]

  void validate() const;

  bool operator==(const ContactParams&) const = default;
};

struct ContactForce {
  double normal = 0.0;
  Eigen::Vector2d tangential = Eigen::Vector2d::Zero();
};

/// Spring-damper normal force (never adhesive) with regularized Coulomb
/// friction opposing the tangential velocity.
ContactForce contact_force(double penetration, double penetration_rate,
                           const Eigen::Vector2d& tangential_velocity, const ContactParams& params);

struct RobotParams {
  double mass = 4.0;                  // [kg]
  double roll_inertia = 0.15;         // about the COM [kg m^2]
  double thruster_arm = 0.15;         // lateral distance of each thruster [m]
  double hip_half_width = 0.10;       // lateral hip offset from the COM [m]
  double stance_depth = 0.40;         // nominal foot depth below the hip [m]
  double servo_time_constant = 0.01;  // [s]
  double joint_rate_limit = 29.7;     // [rad/s]
  double gravity = 9.81;              // [m/s^2]
  kin::LegGeometry leg;
  kin::JointLimits left_limits = kin::JointLimits::defaults(kin::Side::kLeft);
  kin::JointLimits right_limits = kin::JointLimits::defaults(kin::Side::kRight);
  ContactParams contact;

  const kin::JointLimits& limits(kin::Side side) const {
    return side == kin::Side::kLeft ? left_limits : right_limits;
  }
  double hip_y(kin::Side side) const {
    return side == kin::Side::kLeft ? hip_half_width : -hip_half_width;
  }
  /// Hip-frame foot target at rest: straight below the frontal pivot.
  kin::FootTarget nominal_foot() const { return {0.0, 0.0, stance_depth}; }

  void validate() const;

  bool operator==(const RobotParams&) const = default;
};

struct LegState {
  kin::JointAngles joints;
  Eigen::Vector3d foot = Eigen::Vector3d::Zero();  // world position [m]
  double penetration = 0.0;                        // max(0, -foot z) [m]
  bool contact = false;
  double normal_force = 0.0;                       // [N]
  Eigen::Vector2d friction = Eigen::Vector2d::Zero();
};

struct WorldState {
  Eigen::Vector3d position = Eigen::Vector3d::Zero();  // COM [m]
  Eigen::Vector3d velocity = Eigen::Vector3d::Zero();
  double roll = 0.0;       // [rad]
  double roll_rate = 0.0;  // [rad/s]
  std::array<LegState, 2> legs;  // [0] left, [1] right
  control::ThrustPair thrust;
  double time = 0.0;

  // Constrained degrees of freedom.
  static constexpr double pitch() { return 0.0; }
  static constexpr double yaw() { return 0.0; }

  LegState& leg(kin::Side s) { return legs[s == kin::Side::kLeft ? 0 : 1]; }
  const LegState& leg(kin::Side s) const { return legs[s == kin::Side::kLeft ? 0 : 1]; }
};

struct Commands {
  std::array<kin::JointAngles, 2> joints;  // [0] left, [1] right
  control::ThrustPair thrust;
  Eigen::Vector3d external_force = Eigen::Vector3d::Zero();  // applied at the COM [N]
};

/// Foot position in the world for the given joint angles and body pose.
Eigen::Vector3d foot_position(const Eigen::Vector3d& com, double roll, const kin::JointAngles& q,
                              const RobotParams& params, kin::Side side);

/// Both legs at the nominal stance, feet `clearance` above the ground.
WorldState standing_state(const RobotParams& params, double clearance = 0.0);

/// Kinetic + gravitational + contact-spring energy [J].
double mechanical_energy(const WorldState& state, const RobotParams& params);

using SupportPolygon = std::vector<Eigen::Vector2d>;

/// Ground-plane positions of the feet in contact.
SupportPolygon support_polygon(const WorldState& state);

/// True when the COM ground projection lies inside the support polygon, or
/// within `margin` of it for point and segment support.
bool statically_stable(const Eigen::Vector2d& com_xy, const SupportPolygon& polygon, double margin);

/// One semi-implicit Euler step. Contact damping and stiction are treated
/// implicitly in the velocity update. Throws NumericalDivergence.
WorldState world_step(const WorldState& state, const Commands& commands, const RobotParams& params,
                      double dt);

}  // namespace tbiped::sim
