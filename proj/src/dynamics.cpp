#include "arcad/dynamics.hpp"

#include <cmath>

#include "arcad/errors.hpp"

namespace arcad {

Wrench body_wrench(const AllocationMatrix& b, const VecX& thrusts) {
    if (thrusts.size() != b.rotor_count()) {
        throw DimensionError("thrust vector has " + std::to_string(thrusts.size()) +
                             " entries for " + std::to_string(b.rotor_count()) +
                             " rotors");
    }
    Eigen::Matrix<double, 6, 1> w = b.matrix * thrusts;
    return {w.head<3>(), w.tail<3>(), WrenchFrame::Body};
}

EndEffectorPose end_effector_pose(const AirframeModel& airframe, const RigidState& state) {
    if (!airframe.end_effector) {
        throw std::invalid_argument("airframe has no end effector");
    }
    const EndEffectorSpec& ee = *airframe.end_effector;
    const Mat3 r = state.rotation();
    const Vec3 arm_body = ee.mount_point + ee.length * ee.direction;
    EndEffectorPose pose;
    pose.tip_position = state.position + r * arm_body;
    pose.tip_velocity = state.velocity + r * (state.omega.cross(arm_body));
    return pose;
}

Mat3 end_effector_rotation(const EndEffectorSpec& ee) {
    const Vec3 x = ee.direction.normalized();
    auto [y, z] = orthonormal_complement(x);
    Mat3 r;
    r.col(0) = x;
    r.col(1) = y;
    r.col(2) = z;
    return r;
}

namespace {

struct Penetration {
    bool hit = false;
    double depth = 0.0; // m, >= 0
    Vec3 normal = Vec3::UnitZ(); // unit, toward free space
};

Penetration penetrate_plane(const PlaneObstacle& plane, const Vec3& tip) {
    const double depth = (plane.point - tip).dot(plane.normal);
    if (depth <= 0.0) return {};
    return {true, depth, plane.normal};
}

// Deepest-axis normal for a point inside the box; no contact outside.
Penetration penetrate_box(const BoxObstacle& box, const Vec3& tip) {
    Penetration best;
    double min_depth = std::numeric_limits<double>::infinity();
    for (int axis = 0; axis < 3; ++axis) {
        const double below = tip(axis) - box.min_corner(axis);
        const double above = box.max_corner(axis) - tip(axis);
        if (below <= 0.0 || above <= 0.0) return {};
        Vec3 n = Vec3::Zero();
        if (below < above) {
            if (below < min_depth) {
                min_depth = below;
                n(axis) = -1.0;
                best = {true, below, n};
            }
        } else if (above < min_depth) {
            min_depth = above;
            n(axis) = 1.0;
            best = {true, above, n};
        }
    }
    return best;
}

} // namespace

ContactResult contact_wrench(const EndEffectorPose& tip, const Environment& env,
                             const AirframeModel& airframe, const RigidState& state) {
    ContactResult result;
    result.measured_ee.frame = WrenchFrame::EndEffector;
    if (!airframe.end_effector || env.obstacles.empty()) return result;

    Vec3 total_force = Vec3::Zero(); // inertial, on vehicle
    for (const Obstacle& obstacle : env.obstacles) {
        Penetration pen;
        const ContactParams* params = nullptr;
        if (const auto* plane = std::get_if<PlaneObstacle>(&obstacle)) {
            pen = penetrate_plane(*plane, tip.tip_position);
            params = &plane->contact;
        } else {
            const auto& box = std::get<BoxObstacle>(obstacle);
            pen = penetrate_box(box, tip.tip_position);
            params = &box.contact;
        }
        if (!pen.hit) continue;
        result.in_contact = true;

        const double rate = -tip.tip_velocity.dot(pen.normal); // + into the surface
        const double fn = std::max(0.0, params->stiffness * pen.depth + params->damping * rate);
        const Vec3 v_tangential =
            tip.tip_velocity - tip.tip_velocity.dot(pen.normal) * pen.normal;
        total_force += fn * pen.normal - params->tangential_viscous * v_tangential;
    }

    const Mat3 r = state.rotation();
    const Vec3 force_body = r.transpose() * total_force;
    const Vec3 lever_body = r.transpose() * (tip.tip_position - state.position);
    result.on_vehicle.force = force_body;
    result.on_vehicle.moment = lever_body.cross(force_body);
    result.on_vehicle.frame = WrenchFrame::Body;

    const Mat3 r_ee = end_effector_rotation(*airframe.end_effector);
    result.measured_ee.force = r_ee.transpose() * (r.transpose() * (-total_force));
    result.measured_ee.moment = Vec3::Zero(); // point contact at the tip
    return result;
}

StateDerivative state_derivative(const AirframeModel& airframe, const RigidState& state,
                                 const Wrench& actuator_body, const Wrench& external_body,
                                 double gravity) {
    const Mat3 r = state.rotation();
    const Vec3 drag_body = airframe.linear_drag.cwiseProduct(r.transpose() * state.velocity);
    const Vec3 force_body = actuator_body.force + external_body.force - drag_body;

    StateDerivative d;
    d.position_dot = state.velocity;
    d.velocity_dot = r * force_body / airframe.mass + Vec3(0.0, 0.0, gravity);
    d.attitude_dot = quat_derivative(state.attitude, state.omega);
    const Vec3 torque = actuator_body.moment + external_body.moment -
                        state.omega.cross(airframe.inertia * state.omega);
    d.omega_dot = airframe.inertia.ldlt().solve(torque);
    return d;
}

namespace {

using RigidVec = Eigen::Matrix<double, 13, 1>;

RigidVec pack(const RigidState& s) {
    RigidVec y;
    y.segment<3>(0) = s.position;
    y.segment<3>(3) = s.velocity;
    y(6) = s.attitude.w();
    y(7) = s.attitude.x();
    y(8) = s.attitude.y();
    y(9) = s.attitude.z();
    y.segment<3>(10) = s.omega;
    return y;
}

void unpack(const RigidVec& y, RigidState& s) {
    s.position = y.segment<3>(0);
    s.velocity = y.segment<3>(3);
    s.attitude = Quat(y(6), y(7), y(8), y(9));
    s.omega = y.segment<3>(10);
}

RigidVec pack_derivative(const StateDerivative& d) {
    RigidVec y;
    y.segment<3>(0) = d.position_dot;
    y.segment<3>(3) = d.velocity_dot;
    y.segment<4>(6) = d.attitude_dot;
    y.segment<3>(10) = d.omega_dot;
    return y;
}

void check_finite(const RigidState& s, double dt) {
    auto bad = [&](double v) { return !std::isfinite(v); };
    static const char* kPos[] = {"position.x", "position.y", "position.z"};
    static const char* kVel[] = {"velocity.x", "velocity.y", "velocity.z"};
    static const char* kQuat[] = {"attitude.w", "attitude.x", "attitude.y", "attitude.z"};
    static const char* kOmega[] = {"omega.x", "omega.y", "omega.z"};
    for (int i = 0; i < 3; ++i)
        if (bad(s.position(i))) throw DivergenceError(kPos[i], dt);
    for (int i = 0; i < 3; ++i)
        if (bad(s.velocity(i))) throw DivergenceError(kVel[i], dt);
    const double q[4] = {s.attitude.w(), s.attitude.x(), s.attitude.y(), s.attitude.z()};
    for (int i = 0; i < 4; ++i)
        if (bad(q[i])) throw DivergenceError(kQuat[i], dt);
    for (int i = 0; i < 3; ++i)
        if (bad(s.omega(i))) throw DivergenceError(kOmega[i], dt);
    for (int i = 0; i < s.thrusts.size(); ++i)
        if (bad(s.thrusts(i)))
            throw DivergenceError("thrust[" + std::to_string(i) + "]", dt);
}

} // namespace

RigidState step(const AirframeModel& airframe, const Environment& env,
                const RigidState& state, const Commands& commands, double dt) {
    const int n = airframe.rotor_count();
    if (commands.thrust.size() != n) {
        throw DimensionError("thrust command size mismatch");
    }

    // Actuator wrench is frozen at the start-of-step actuator values.
    const AllocationMatrix b = build_allocation_matrix(airframe, state.servo_angles);
    const Wrench actuator = body_wrench(b, state.thrusts);

    RigidState next = state;

    // Exact first-order lag toward the clamped commands.
    for (int i = 0; i < n; ++i) {
        const RotorSpec& rotor = airframe.rotors[i];
        const double cmd = std::clamp(commands.thrust(i), rotor.thrust_min, rotor.thrust_max);
        const double decay = std::exp(-dt / rotor.motor_time_constant);
        next.thrusts(i) = cmd + (state.thrusts(i) - cmd) * decay;
        next.thrusts(i) = std::clamp(next.thrusts(i), rotor.thrust_min, rotor.thrust_max);
        if (rotor.tiltable && commands.servo_angles_deg.size() == n) {
            const double servo_cmd = commands.servo_angles_deg(i);
            next.servo_angles(i) = servo_cmd + (state.servo_angles(i) - servo_cmd) * decay;
        }
    }

    const bool has_contact = airframe.end_effector && !env.obstacles.empty();
    auto derivative = [&](const RigidVec& y) {
        RigidState stage = state;
        unpack(y, stage);
        Wrench external;
        if (has_contact) {
            external = contact_wrench(end_effector_pose(airframe, stage), env,
                                      airframe, stage).on_vehicle;
        }
        return pack_derivative(
            state_derivative(airframe, stage, actuator, external, env.gravity));
    };

    const RigidVec y0 = pack(state);
    const RigidVec k1 = derivative(y0);
    const RigidVec k2 = derivative(y0 + 0.5 * dt * k1);
    const RigidVec k3 = derivative(y0 + 0.5 * dt * k2);
    const RigidVec k4 = derivative(y0 + dt * k3);
    const RigidVec y1 = y0 + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

    unpack(y1, next);
    next.attitude.normalize();
    check_finite(next, dt);
    return next;
}

} // namespace arcad
