#include "arcad/airframe.hpp"

#include <cmath>

#include "arcad/errors.hpp"
#include "arcad/lp.hpp"

namespace arcad {

Vec3 rotor_axis(const RotorSpec& rotor, double servo_angle_deg) {
    const double theta = deg2rad(rotor.placement_angle);
    const Vec3 radial(std::cos(theta), std::sin(theta), 0.0);
    const Vec3 tangential = Vec3::UnitZ().cross(radial);

    const double dihedral = deg2rad(rotor.dihedral_angle - rotor.inward_angle);
    const double sideward =
        deg2rad(rotor.sideward_angle + (rotor.tiltable ? servo_angle_deg : 0.0));

    Vec3 axis(0.0, 0.0, -1.0);
    axis = axis_angle_rotate(axis, tangential, dihedral);
    axis = axis_angle_rotate(axis, radial, sideward);
    return axis;
}

Vec3 rotor_position(const RotorSpec& rotor) {
    const double theta = deg2rad(rotor.placement_angle);
    return Vec3(rotor.arm_length * std::cos(theta),
                rotor.arm_length * std::sin(theta),
                rotor.arm_z_offset);
}

AllocationMatrix build_allocation_matrix(const AirframeModel& airframe,
                                         const VecX& servo_angles_deg) {
    const int n = airframe.rotor_count();
    if (servo_angles_deg.size() != n) {
        throw DimensionError("servo_angles has " +
                             std::to_string(servo_angles_deg.size()) +
                             " entries for " + std::to_string(n) + " rotors");
    }
    AllocationMatrix out;
    out.matrix.resize(6, n);
    for (int i = 0; i < n; ++i) {
        const RotorSpec& rotor = airframe.rotors[i];
        const Vec3 axis = rotor_axis(rotor, servo_angles_deg(i));
        const Vec3 pos = rotor_position(rotor);
        const Vec3 moment =
            pos.cross(axis) + rotor.spin_direction * rotor.torque_to_thrust * axis;
        out.matrix.block<3, 1>(0, i) = axis;
        out.matrix.block<3, 1>(3, i) = moment;
    }
    return out;
}

AllocationMatrix build_allocation_matrix(const AirframeModel& airframe) {
    return build_allocation_matrix(airframe, VecX::Zero(airframe.rotor_count()));
}

HoverResult hover_feasible(const AirframeModel& airframe, const AllocationMatrix& b,
                           double gravity) {
    const int n = b.rotor_count();
    VecX lo(n), hi(n);
    for (int i = 0; i < n; ++i) {
        lo(i) = airframe.rotors[i].thrust_min;
        hi(i) = airframe.rotors[i].thrust_max;
    }
    VecX hover_wrench = VecX::Zero(6);
    hover_wrench(2) = -airframe.mass * gravity;

    auto lp = lp::solve_box_equality_feasibility(b.matrix, hover_wrench, lo, hi);
    if (!lp.feasible) return {false, {}};
    return {true, lp.point};
}

std::vector<std::string> validate_airframe(const AirframeModel& airframe) {
    std::vector<std::string> violations;
    auto add = [&](const std::string& msg) { violations.push_back(msg); };

    if (!(airframe.mass > 0.0)) add("mass must be > 0");
    if ((airframe.inertia - airframe.inertia.transpose()).norm() >= 1e-9) {
        add("inertia must be symmetric");
    } else {
        Eigen::SelfAdjointEigenSolver<Mat3> eig(airframe.inertia);
        if (eig.eigenvalues().minCoeff() <= 0.0) add("inertia must be positive definite");
    }
    if (airframe.rotors.empty()) add("rotors: at least one rotor required");

    for (size_t i = 0; i < airframe.rotors.size(); ++i) {
        const RotorSpec& r = airframe.rotors[i];
        const std::string tag = "rotor " + std::to_string(i + 1) + ": ";
        if (!(r.thrust_min >= 0.0 && r.thrust_min < r.thrust_max)) {
            add(tag + "thrust limits must satisfy 0 <= thrust_min < thrust_max");
        }
        if (!(r.arm_length >= 0.0)) add(tag + "arm_length must be >= 0");
        if (!(r.torque_to_thrust >= 0.0)) add(tag + "torque_to_thrust must be >= 0");
        if (!(r.motor_time_constant > 0.0)) add(tag + "motor_time_constant must be > 0");
        if (r.spin_direction != 1 && r.spin_direction != -1) {
            add(tag + "spin_direction must be +1 or -1");
        }
    }
    if (airframe.end_effector) {
        const EndEffectorSpec& ee = *airframe.end_effector;
        if (std::abs(ee.direction.norm() - 1.0) > 1e-9) {
            add("end_effector direction must be a unit vector");
        }
        if (!(ee.length >= 0.0)) add("end_effector length must be >= 0");
    }

    // Hover feasibility only makes sense once the structural checks pass.
    if (violations.empty()) {
        auto b = build_allocation_matrix(airframe);
        if (!hover_feasible(airframe, b).feasible) {
            add("hover infeasible: no thrust vector within limits supports the weight");
        }
    }
    return violations;
}

} // namespace arcad
