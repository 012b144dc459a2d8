#include "tbiped/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tbiped/errors.hpp"

namespace tbiped {
namespace {

constexpr std::array<kin::Side, 2> kSides{kin::Side::kLeft, kin::Side::kRight};

// Whole trot cycles in the second half of the run, ending at its end.
double steady_window_start(const ScenarioConfig& cfg) {
  const double cycles = std::floor(0.5 * cfg.duration / cfg.gait.step_period);
  if (cycles < 1.0) return 0.5 * cfg.duration;
  return cfg.duration - cycles * cfg.gait.step_period;
}

}  // namespace

ScenarioResult run_scenario(const ScenarioConfig& config) {
  config.validate();
  ScenarioConfig cfg = config;
  cfg.sync_derived();

  const sim::RobotParams& robot = cfg.robot;
  gait::GaitParams gait_params = cfg.gait;
  if (cfg.kind != ScenarioKind::kStraightWalk) gait_params.step_length = 0.0;

  const double clearance = cfg.kind == ScenarioKind::kDropThenTrot ? cfg.drop_height : 0.0;
  sim::WorldState world = sim::standing_state(robot, clearance);

  control::ImuModel imu(cfg.imu.noise, cfg.seed);
  control::AttitudeFilter filter(cfg.imu.ema_alpha);
  control::Pid pid(cfg.pid);

  const kin::FootTarget nominal = robot.nominal_foot();
  std::array<gait::FootPlanner, 2> planners{
      gait::FootPlanner(gait_params, nominal, kin::Side::kLeft),
      gait::FootPlanner(gait_params, nominal, kin::Side::kRight)};

  sim::Commands cmd;
  for (std::size_t i = 0; i < 2; ++i) cmd.joints[i] = world.legs[i].joints;

  const int substeps = cfg.substeps();
  const double tick = 1.0 / cfg.control_rate;
  const auto ticks = static_cast<long>(std::llround(cfg.duration * cfg.control_rate));

  ScenarioResult result;
  result.rows.reserve(static_cast<std::size_t>(ticks));
  ScenarioSummary& sum = result.summary;
  sum.steady_start = steady_window_start(cfg);
  sum.min_grf = std::numeric_limits<double>::infinity();
  sum.min_body_z = world.position.z();
  sum.max_body_z = world.position.z();
  double thrust_acc = 0.0;
  double grf_acc = 0.0;
  double support_acc = 0.0;
  long steady_rows = 0;
  long steady_steps = 0;

  for (long k = 0; k < ticks; ++k) {
    const double t = static_cast<double>(k) * tick;

    control::ImuSample truth;
    truth.roll = world.roll;
    truth.pitch = sim::WorldState::pitch();
    truth.yaw = sim::WorldState::yaw();
    truth.roll_rate = world.roll_rate;
    truth.timestamp = t;
    const control::ImuSample raw = imu.measure(truth);
    const control::ImuSample filtered = filter.step(raw);

    const gait::PlacementOffset offset = control::capture_offset(
        filtered.pitch, filtered.roll, world.velocity.x(), world.velocity.y(), cfg.capture);

    bool saturated = false;
    for (std::size_t i = 0; i < 2; ++i) {
      const kin::Side side = kSides[i];
      kin::FootTarget target = nominal;
      if (t >= cfg.gait_start_time) target = planners[i].update(t - cfg.gait_start_time, offset);
      try {
        const kin::Saturated q = kin::saturate_joints(
            kin::inverse_kinematics(target, robot.leg, side), robot.limits(side));
        cmd.joints[i] = q.angles;
        saturated = saturated || q.clamped;
      } catch (const UnreachableTarget&) {
        ++sum.unreachable_targets;
      }
    }
    if (saturated) ++sum.saturated_ticks;

    const double correction = pid.step(-filtered.roll, tick);
    cmd.thrust = control::thruster_mix(cfg.base_thrust, correction);

    TelemetryRow row;
    row.time = t;
    const auto& lq = world.leg(kin::Side::kLeft).joints;
    const auto& rq = world.leg(kin::Side::kRight).joints;
    row.left_joints = {lq.hip_frontal, lq.hip_sagittal, lq.knee};
    row.right_joints = {rq.hip_frontal, rq.hip_sagittal, rq.knee};
    row.body = {world.position.x(), world.position.y(), world.position.z()};
    row.roll_raw = raw.roll;
    row.roll_filtered = filtered.roll;
    row.pitch_filtered = filtered.pitch;
    row.thrust_f1 = cmd.thrust.f1;
    row.thrust_f2 = cmd.thrust.f2;
    row.grf_left = world.leg(kin::Side::kLeft).normal_force;
    row.grf_right = world.leg(kin::Side::kRight).normal_force;
    row.capture_dx = offset.dx;
    row.capture_dy = offset.dy;
    result.rows.push_back(row);

    if (t >= sum.steady_start - 1e-9) {
      thrust_acc += 0.5 * (row.thrust_f1 + row.thrust_f2);
      ++steady_rows;
    }

    for (int s = 0; s < substeps; ++s) {
      const double now = world.time;
      const Disturbance& d = cfg.disturbance;
      cmd.external_force = (now >= d.start && now < d.start + d.duration)
                               ? Eigen::Vector3d(d.force_x, d.force_y, 0.0)
                               : Eigen::Vector3d::Zero();
      const double lift = (cmd.thrust.f1 + cmd.thrust.f2) * std::cos(world.roll);
      const bool steady = now >= sum.steady_start - 1e-9;
      world = sim::world_step(world, cmd, robot, cfg.dt);
      if (steady) {
        const double grf = world.legs[0].normal_force + world.legs[1].normal_force;
        grf_acc += grf;
        support_acc += grf + lift;
        ++steady_steps;
      }

      sum.max_abs_roll = std::max(sum.max_abs_roll, std::abs(world.roll));
      sum.min_body_z = std::min(sum.min_body_z, world.position.z());
      sum.max_body_z = std::max(sum.max_body_z, world.position.z());
      for (const sim::LegState& leg : world.legs) {
        sum.max_penetration = std::max(sum.max_penetration, leg.penetration);
        sum.min_grf = std::min(sum.min_grf, leg.normal_force);
        if (leg.contact && !sum.first_contact_time) sum.first_contact_time = world.time;
      }
    }
  }

  if (steady_rows > 0) {
    sum.mean_thrust = thrust_acc / static_cast<double>(steady_rows);
  }
  if (steady_steps > 0) {
    sum.mean_grf_total = grf_acc / static_cast<double>(steady_steps);
    sum.mean_vertical_support = support_acc / static_cast<double>(steady_steps);
  }
  sum.final_body_z = world.position.z();
  if (!std::isfinite(sum.min_grf)) sum.min_grf = 0.0;
  return result;
}

}  // namespace tbiped
