#pragma once

#include <array>
#include <optional>
#include <vector>

#include "arcad/airframe.hpp"
#include "arcad/dynamics.hpp"
#include "arcad/math.hpp"

namespace arcad {

/// Componentwise PID gains. integrator_limit is an absolute clamp on the
/// integral term's contribution (ki * integral), per axis.
struct PidGains {
    Vec3 kp = Vec3::Zero();
    Vec3 ki = Vec3::Zero();
    Vec3 kd = Vec3::Zero();
    Vec3 integrator_limit = Vec3::Zero();
};

/// How a desired inertial force is turned into an attitude for vehicles that
/// can (or cannot) produce lateral thrust.
enum class AttitudeStrategy {
    ZeroTilt,      // hold yaw-only attitude, pass lateral force through
    ThrustAligned, // tilt so body -z opposes the desired force (underactuated style)
    FullPose,      // track an externally supplied full attitude
};

/// Contact-frame axis partition for hybrid force-position control.
struct ForceSelection {
    Mat3 rotation_inertial_to_contact = Mat3::Identity();
    std::array<bool, 3> axis_mask = {false, false, false}; // true = force-controlled

    bool any_force_axis() const { return axis_mask[0] || axis_mask[1] || axis_mask[2]; }
};

struct TrajectoryWaypoint {
    Vec3 position = Vec3::Zero();
    double yaw_deg = 0.0;
    std::optional<Mat3> attitude;          // full pose; overrides yaw when present
    std::optional<VecX> servo_angles_deg;  // per rotor
    std::optional<Wrench> desired_wrench;  // contact frame
    double position_tolerance = 0.1; // m
    double hold_time = 0.0;          // s
};

/// Mutable controller memory. One instance per simulation.
struct ControllerState {
    Vec3 position_integral = Vec3::Zero(); // integral of position error
    Vec3 attitude_integral = Vec3::Zero(); // integral of attitude error
    Vec3 force_integral = Vec3::Zero();    // integral of force error, contact frame
    std::size_t waypoint_index = 0;
    double waypoint_hold = 0.0; // s spent inside the active waypoint's tolerance
    bool finished = false;
    Mat3 last_attitude_des = Mat3::Identity(); // held on degenerate thrust direction
};

/// Desired inertial force from PID position tracking plus exact gravity
/// compensation. Updates (and clamps) the position integrator in cs.
Vec3 position_control(const PidGains& gains, const Vec3& desired_position,
                      const Vec3& desired_velocity, const RigidState& state,
                      double mass, double gravity, ControllerState& cs, double dt);

struct AttitudeCommand {
    Mat3 r_des;
    Vec3 f_body_des; // N, body frame
};

/// Resolves a desired inertial force and yaw (or full pose) into a desired
/// attitude and body-frame force. ThrustAligned throws
/// DegenerateDirectionError when the force direction is undefined.
AttitudeCommand attitude_strategy(AttitudeStrategy strategy, const Vec3& f_des_inertial,
                                  double yaw_des_deg,
                                  const std::optional<Mat3>& pose_des = std::nullopt);

/// Geometric attitude tracking: tau = -kp e_R - kd omega - ki int(e_R)
/// + omega x I omega, with e_R = 1/2 vee(Rd^T R - R^T Rd).
Vec3 attitude_control(const PidGains& gains, const Mat3& r_des, const RigidState& state,
                      const Mat3& inertia, ControllerState& cs, double dt);

struct AllocationResult {
    VecX thrusts;          // N, clamped to the rotor boxes
    bool saturated = false;
};

/// Minimum-norm least-squares thrust allocation (SVD pseudoinverse, singular
/// values below 1e-9 of the largest treated as zero), then componentwise clamp.
AllocationResult allocate(const AllocationMatrix& b, const Wrench& desired_body,
                          const VecX& thrust_min, const VecX& thrust_max);

/// Per-scenario controller configuration.
struct ControllerConfig {
    AttitudeStrategy strategy = AttitudeStrategy::ThrustAligned;
    PidGains position_gains;
    PidGains attitude_gains;
    PidGains force_gains; // PI with feedforward; kd unused
    ForceSelection force_selection;
};

/// One controller-step setpoint (an active waypoint, expanded).
struct Setpoint {
    Vec3 position = Vec3::Zero();
    Vec3 velocity = Vec3::Zero();
    double yaw_deg = 0.0;
    std::optional<Mat3> attitude;
    std::optional<VecX> servo_angles_deg;
    std::optional<Wrench> desired_wrench; // contact frame
};

/// Full free-flight cascade: position control, attitude strategy, attitude
/// control. Returns the desired body wrench.
Wrench free_flight_wrench(const ControllerConfig& config, const AirframeModel& airframe,
                          const Setpoint& setpoint, const RigidState& state,
                          double gravity, ControllerState& cs, double dt);

/// Hybrid force-position cascade. Axes marked force-controlled in the contact
/// frame track the desired wrench with PI + feedforward on the measured
/// end-effector force (given here as the inertial-frame reaction on the
/// environment); remaining axes follow position control. With no
/// force-controlled axis this is exactly the free-flight path.
Wrench hybrid_force_position(const ControllerConfig& config, const AirframeModel& airframe,
                             const Setpoint& setpoint, const Vec3& measured_force_inertial,
                             const RigidState& state, double gravity, ControllerState& cs,
                             double dt);

struct TrajectoryOutput {
    Setpoint setpoint;
    bool finished = false;
};

/// Waypoint sequencer: emits the active waypoint and advances once the
/// position error stays inside the tolerance for the hold time. For waypoints
/// carrying a wrench setpoint the error is measured only along
/// position-controlled axes of the selection.
TrajectoryOutput trajectory_step(const std::vector<TrajectoryWaypoint>& waypoints,
                                 ControllerState& cs, const RigidState& state,
                                 const ForceSelection& selection, double dt);

} // namespace arcad
