#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "arcad/math.hpp"

namespace arcad {

inline constexpr double kGravityDefault = 9.81; // m/s^2, +z down (NED)

/// One rotor of a multirotor. Angles in degrees, body frame is
/// front-right-down, thrust acts along -z before any tilt is applied.
struct RotorSpec {
    double placement_angle = 0.0;  // deg, arm angle in x-y plane from +x toward +y
    double arm_length = 0.0;       // m
    double arm_z_offset = 0.0;     // m, + toward body +z
    int spin_direction = 1;        // +1 / -1, sign of reaction torque about rotor axis
    double sideward_angle = 0.0;   // deg, tilt about the arm's radial axis
    double dihedral_angle = 0.0;   // deg, tilt about the arm's tangential axis
    double inward_angle = 0.0;     // deg, contributes -inward_angle of dihedral
    double thrust_min = 0.0;       // N
    double thrust_max = 0.0;       // N
    double torque_to_thrust = 0.0; // m, reaction moment per unit thrust (k_t)
    double motor_time_constant = 0.02; // s
    bool tiltable = false;         // sideward angle is servo-commanded at runtime
};

/// Rigid arm/tool attached to the airframe; the point of contact.
struct EndEffectorSpec {
    Vec3 mount_point = Vec3::Zero(); // body frame, m
    Vec3 direction = Vec3::UnitX();  // unit, body frame
    double length = 0.0;             // m
};

struct AirframeModel {
    double mass = 0.0;               // kg
    Mat3 inertia = Mat3::Identity(); // kg m^2, body frame
    std::vector<RotorSpec> rotors;
    std::optional<EndEffectorSpec> end_effector;
    Vec3 linear_drag = Vec3::Zero(); // N s/m, diagonal drag on body-resolved velocity

    int rotor_count() const { return static_cast<int>(rotors.size()); }
};

/// 6xn map from rotor thrusts to body wrench. Rows 1-3: force per unit
/// thrust (unit directions); rows 4-6: moment per unit thrust (m).
struct AllocationMatrix {
    Eigen::Matrix<double, 6, Eigen::Dynamic> matrix;

    int rotor_count() const { return static_cast<int>(matrix.cols()); }
    Eigen::Matrix3Xd force_rows() const { return matrix.topRows<3>(); }
    Eigen::Matrix3Xd moment_rows() const { return matrix.bottomRows<3>(); }
};

/// Thrust direction of a rotor in the body frame. Starting from (0,0,-1) the
/// axis is rotated by the total dihedral (dihedral - inward) about the arm's
/// tangential axis, then by sideward (+ servo when tiltable) about the radial
/// arm axis. servo_angle is ignored for non-tiltable rotors.
Vec3 rotor_axis(const RotorSpec& rotor, double servo_angle_deg = 0.0);

/// Hub position of a rotor in the body frame.
Vec3 rotor_position(const RotorSpec& rotor);

/// Builds the control allocation matrix for the given servo angles
/// (one entry per rotor; entries for non-tiltable rotors are ignored).
AllocationMatrix build_allocation_matrix(const AirframeModel& airframe,
                                         const VecX& servo_angles_deg);

/// Convenience overload with all servo angles at zero.
AllocationMatrix build_allocation_matrix(const AirframeModel& airframe);

struct HoverResult {
    bool feasible = false;
    VecX thrusts; // N, one feasible hover solution when feasible
};

/// Whether thrusts within the rotor boxes can produce exactly the hover
/// wrench (0,0,-m g,0,0,0). Decided exactly by a small linear program.
HoverResult hover_feasible(const AirframeModel& airframe, const AllocationMatrix& b,
                           double gravity = kGravityDefault);

/// All invariant violations of the model, as human-readable descriptions
/// naming the offending field. Includes hover feasibility. Empty when valid.
std::vector<std::string> validate_airframe(const AirframeModel& airframe);

} // namespace arcad
