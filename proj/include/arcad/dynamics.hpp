#pragma once

#include <variant>
#include <vector>

#include "arcad/airframe.hpp"
#include "arcad/math.hpp"

namespace arcad {

enum class WrenchFrame { Body, Inertial, EndEffector };

/// Force (N) + moment (N m) pair with the frame it is expressed in.
struct Wrench {
    Vec3 force = Vec3::Zero();
    Vec3 moment = Vec3::Zero();
    WrenchFrame frame = WrenchFrame::Body;
};

/// Full simulation state. Attitude maps body to inertial (FRD body in a
/// NED world); thrusts and servo angles are the lagged actuator outputs.
struct RigidState {
    Vec3 position = Vec3::Zero(); // inertial, m
    Vec3 velocity = Vec3::Zero(); // inertial, m/s
    Quat attitude = Quat::Identity();
    Vec3 omega = Vec3::Zero();    // body, rad/s
    VecX thrusts;                 // N, per rotor
    VecX servo_angles;            // deg, per rotor (used only by tiltable rotors)

    Mat3 rotation() const { return attitude.normalized().toRotationMatrix(); }
};

struct ContactParams {
    double stiffness = 0.0;          // N/m
    double damping = 0.0;            // N s/m
    double tangential_viscous = 0.0; // N s/m
};

struct PlaneObstacle {
    Vec3 point = Vec3::Zero();  // a point on the surface, m
    Vec3 normal = Vec3::UnitZ(); // unit, toward free space
    ContactParams contact;
};

struct BoxObstacle {
    Vec3 min_corner = Vec3::Zero();
    Vec3 max_corner = Vec3::Zero();
    ContactParams contact;
};

using Obstacle = std::variant<PlaneObstacle, BoxObstacle>;

struct Environment {
    double gravity = kGravityDefault; // m/s^2, +z down
    std::vector<Obstacle> obstacles;
};

/// Net body wrench produced by the rotors: (force; moment) = B * thrusts.
Wrench body_wrench(const AllocationMatrix& b, const VecX& thrusts);

struct EndEffectorPose {
    Vec3 tip_position = Vec3::Zero(); // inertial, m
    Vec3 tip_velocity = Vec3::Zero(); // inertial, m/s
};

/// Inertial pose/velocity of the end-effector tip. Requires an end effector.
EndEffectorPose end_effector_pose(const AirframeModel& airframe, const RigidState& state);

/// Rotation end-effector frame -> body frame. The end-effector x axis is the
/// arm direction; the remaining axes complete a deterministic right-handed set.
Mat3 end_effector_rotation(const EndEffectorSpec& ee);

struct ContactResult {
    Wrench on_vehicle;   // body frame
    Wrench measured_ee;  // reaction on the environment, end-effector frame
    bool in_contact = false;
};

/// Penalty (spring-damper) point contact of the end-effector tip against all
/// obstacles. Normal force stiffness*d + damping*rate is clamped at zero so
/// contact never pulls; tangential force is viscous. No end effector or no
/// penetration yields a zero wrench.
ContactResult contact_wrench(const EndEffectorPose& tip, const Environment& env,
                             const AirframeModel& airframe, const RigidState& state);

/// Time derivative of the rigid-body part of the state.
struct StateDerivative {
    Vec3 position_dot;
    Vec3 velocity_dot;
    Eigen::Vector4d attitude_dot; // (w, x, y, z)
    Vec3 omega_dot;
};

/// Newton-Euler derivatives with linear body-resolved drag. Both wrenches are
/// body frame; gravity points along inertial +z.
StateDerivative state_derivative(const AirframeModel& airframe, const RigidState& state,
                                 const Wrench& actuator_body, const Wrench& external_body,
                                 double gravity = kGravityDefault);

struct Commands {
    VecX thrust;           // N, per rotor (clamped to rotor limits)
    VecX servo_angles_deg; // per rotor; ignored for non-tiltable rotors
};

/// Advances the state by one step: exact first-order actuator lag, then one
/// classical RK4 step of the rigid body with the actuator wrench held at its
/// start-of-step value and contact re-evaluated inside each stage. The
/// quaternion is renormalized afterwards. Throws DivergenceError if any
/// channel becomes non-finite.
RigidState step(const AirframeModel& airframe, const Environment& env,
                const RigidState& state, const Commands& commands, double dt);

} // namespace arcad
