#include "arcad/control.hpp"

#include <cmath>

#include "arcad/errors.hpp"

namespace arcad {

namespace {

// Accumulates error into the stored integral, keeping ki * integral inside
// +/- limit per axis, and returns the clamped integral-term contribution.
Vec3 integrate_clamped(Vec3& integral, const Vec3& error, double dt, const Vec3& ki,
                       const Vec3& limit) {
    integral += error * dt;
    for (int i = 0; i < 3; ++i) {
        if (ki(i) > 0.0) {
            const double cap = limit(i) / ki(i);
            integral(i) = std::clamp(integral(i), -cap, cap);
        } else {
            integral(i) = std::clamp(integral(i), -limit(i), limit(i));
        }
    }
    return clamp_abs(ki.cwiseProduct(integral), limit);
}

} // namespace

Vec3 position_control(const PidGains& gains, const Vec3& desired_position,
                      const Vec3& desired_velocity, const RigidState& state,
                      double mass, double gravity, ControllerState& cs, double dt) {
    const Vec3 e_p = desired_position - state.position;
    const Vec3 e_v = desired_velocity - state.velocity;
    const Vec3 integral_term =
        integrate_clamped(cs.position_integral, e_p, dt, gains.ki, gains.integrator_limit);
    const Vec3 feedback =
        gains.kp.cwiseProduct(e_p) + gains.kd.cwiseProduct(e_v) + integral_term;
    return mass * feedback - mass * gravity * Vec3::UnitZ();
}

AttitudeCommand attitude_strategy(AttitudeStrategy strategy, const Vec3& f_des_inertial,
                                  double yaw_des_deg, const std::optional<Mat3>& pose_des) {
    const double yaw = deg2rad(yaw_des_deg);
    switch (strategy) {
    case AttitudeStrategy::ZeroTilt: {
        const Mat3 r_des = yaw_rotation(yaw);
        return {r_des, r_des.transpose() * f_des_inertial};
    }
    case AttitudeStrategy::ThrustAligned: {
        const double magnitude = f_des_inertial.norm();
        if (magnitude < 1e-9) {
            throw DegenerateDirectionError(
                "thrust-aligned attitude undefined for near-zero desired force");
        }
        const Vec3 z_body = -f_des_inertial / magnitude;
        const Vec3 x_yaw(std::cos(yaw), std::sin(yaw), 0.0);
        Vec3 y_body = z_body.cross(x_yaw);
        if (y_body.norm() < 1e-9) {
            throw DegenerateDirectionError(
                "thrust-aligned attitude undefined: force parallel to yaw heading");
        }
        y_body.normalize();
        const Vec3 x_body = y_body.cross(z_body);
        Mat3 r_des;
        r_des.col(0) = x_body;
        r_des.col(1) = y_body;
        r_des.col(2) = z_body;
        return {r_des, Vec3(0.0, 0.0, -magnitude)};
    }
    case AttitudeStrategy::FullPose: {
        if (!pose_des) {
            throw std::invalid_argument("FullPose strategy requires a desired attitude");
        }
        return {*pose_des, pose_des->transpose() * f_des_inertial};
    }
    }
    throw std::logic_error("unknown attitude strategy");
}

Vec3 attitude_control(const PidGains& gains, const Mat3& r_des, const RigidState& state,
                      const Mat3& inertia, ControllerState& cs, double dt) {
    const Mat3 r = state.rotation();
    const Vec3 e_r = 0.5 * vee(r_des.transpose() * r - r.transpose() * r_des);
    const Vec3 integral_term =
        integrate_clamped(cs.attitude_integral, e_r, dt, gains.ki, gains.integrator_limit);
    return -gains.kp.cwiseProduct(e_r) - gains.kd.cwiseProduct(state.omega) -
           integral_term + state.omega.cross(inertia * state.omega);
}

AllocationResult allocate(const AllocationMatrix& b, const Wrench& desired_body,
                          const VecX& thrust_min, const VecX& thrust_max) {
    const int n = b.rotor_count();
    if (thrust_min.size() != n || thrust_max.size() != n) {
        throw DimensionError("thrust limit vectors must have one entry per rotor");
    }
    Eigen::Matrix<double, 6, 1> w;
    w << desired_body.force, desired_body.moment;

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(b.matrix,
                                          Eigen::ComputeThinU | Eigen::ComputeThinV);
    svd.setThreshold(1e-9);
    AllocationResult result;
    result.thrusts = svd.solve(w);
    for (int i = 0; i < n; ++i) {
        if (result.thrusts(i) < thrust_min(i)) {
            result.thrusts(i) = thrust_min(i);
            result.saturated = true;
        } else if (result.thrusts(i) > thrust_max(i)) {
            result.thrusts(i) = thrust_max(i);
            result.saturated = true;
        }
    }
    return result;
}

namespace {

Wrench cascade_to_wrench(const ControllerConfig& config, const AirframeModel& airframe,
                         const Setpoint& setpoint, const Vec3& f_des_inertial,
                         const RigidState& state, ControllerState& cs, double dt) {
    AttitudeCommand att;
    try {
        att = attitude_strategy(config.strategy, f_des_inertial, setpoint.yaw_deg,
                                setpoint.attitude);
        cs.last_attitude_des = att.r_des;
    } catch (const DegenerateDirectionError&) {
        // Hold the previous attitude; the force request is near zero anyway.
        att.r_des = cs.last_attitude_des;
        att.f_body_des = att.r_des.transpose() * f_des_inertial;
    }
    const Vec3 torque =
        attitude_control(config.attitude_gains, att.r_des, state, airframe.inertia, cs, dt);
    return {att.f_body_des, torque, WrenchFrame::Body};
}

} // namespace

Wrench free_flight_wrench(const ControllerConfig& config, const AirframeModel& airframe,
                          const Setpoint& setpoint, const RigidState& state,
                          double gravity, ControllerState& cs, double dt) {
    const Vec3 f_des = position_control(config.position_gains, setpoint.position,
                                        setpoint.velocity, state, airframe.mass, gravity,
                                        cs, dt);
    return cascade_to_wrench(config, airframe, setpoint, f_des, state, cs, dt);
}

Wrench hybrid_force_position(const ControllerConfig& config, const AirframeModel& airframe,
                             const Setpoint& setpoint, const Vec3& measured_force_inertial,
                             const RigidState& state, double gravity, ControllerState& cs,
                             double dt) {
    const ForceSelection& sel = config.force_selection;
    if (!sel.any_force_axis() || !setpoint.desired_wrench) {
        return free_flight_wrench(config, airframe, setpoint, state, gravity, cs, dt);
    }
    const Mat3& r_ci = sel.rotation_inertial_to_contact;

    // Position branch, with errors masked off the force-controlled axes so
    // the integrator only accumulates what position control acts on.
    Vec3 e_p_c = r_ci * (setpoint.position - state.position);
    Vec3 e_v_c = r_ci * (setpoint.velocity - state.velocity);
    for (int i = 0; i < 3; ++i) {
        if (sel.axis_mask[i]) {
            e_p_c(i) = 0.0;
            e_v_c(i) = 0.0;
        }
    }
    const PidGains& pg = config.position_gains;
    const Vec3 integral_term = integrate_clamped(cs.position_integral, r_ci.transpose() * e_p_c,
                                                 dt, pg.ki, pg.integrator_limit);
    const Vec3 f_pos = airframe.mass * (pg.kp.cwiseProduct(r_ci.transpose() * e_p_c) +
                                        pg.kd.cwiseProduct(r_ci.transpose() * e_v_c) +
                                        integral_term) -
                       airframe.mass * gravity * Vec3::UnitZ();
    const Vec3 f_pos_c = r_ci * f_pos;

    // Force branch: PI with feedforward in the contact frame.
    const Vec3 f_des_c = setpoint.desired_wrench->force;
    const Vec3 f_meas_c = r_ci * measured_force_inertial;
    Vec3 e_f = f_des_c - f_meas_c;
    for (int i = 0; i < 3; ++i) {
        if (!sel.axis_mask[i]) e_f(i) = 0.0;
    }
    const PidGains& fg = config.force_gains;
    const Vec3 force_integral_term =
        integrate_clamped(cs.force_integral, e_f, dt, fg.ki, fg.integrator_limit);
    const Vec3 f_force_c = f_des_c + fg.kp.cwiseProduct(e_f) + force_integral_term;

    Vec3 merged_c;
    for (int i = 0; i < 3; ++i) {
        merged_c(i) = sel.axis_mask[i] ? f_force_c(i) : f_pos_c(i);
    }
    const Vec3 f_merged = r_ci.transpose() * merged_c;
    return cascade_to_wrench(config, airframe, setpoint, f_merged, state, cs, dt);
}

namespace {

Setpoint waypoint_setpoint(const TrajectoryWaypoint& wp) {
    Setpoint sp;
    sp.position = wp.position;
    sp.yaw_deg = wp.yaw_deg;
    sp.attitude = wp.attitude;
    sp.servo_angles_deg = wp.servo_angles_deg;
    sp.desired_wrench = wp.desired_wrench;
    return sp;
}

double waypoint_error(const TrajectoryWaypoint& wp, const RigidState& state,
                      const ForceSelection& selection) {
    Vec3 error = wp.position - state.position;
    if (wp.desired_wrench && selection.any_force_axis()) {
        Vec3 error_c = selection.rotation_inertial_to_contact * error;
        for (int i = 0; i < 3; ++i) {
            if (selection.axis_mask[i]) error_c(i) = 0.0;
        }
        return error_c.norm();
    }
    return error.norm();
}

} // namespace

TrajectoryOutput trajectory_step(const std::vector<TrajectoryWaypoint>& waypoints,
                                 ControllerState& cs, const RigidState& state,
                                 const ForceSelection& selection, double dt) {
    if (waypoints.empty()) {
        throw std::invalid_argument("trajectory requires at least one waypoint");
    }
    if (cs.waypoint_index >= waypoints.size()) cs.waypoint_index = waypoints.size() - 1;

    const TrajectoryWaypoint* active = &waypoints[cs.waypoint_index];
    if (!cs.finished) {
        if (waypoint_error(*active, state, selection) <= active->position_tolerance) {
            if (cs.waypoint_hold >= active->hold_time) {
                if (cs.waypoint_index + 1 < waypoints.size()) {
                    ++cs.waypoint_index;
                    cs.waypoint_hold = 0.0;
                    active = &waypoints[cs.waypoint_index];
                } else {
                    cs.finished = true;
                }
            } else {
                cs.waypoint_hold += dt;
            }
        } else {
            cs.waypoint_hold = 0.0;
        }
    }
    return {waypoint_setpoint(*active), cs.finished};
}

} // namespace arcad
