#pragma once

#include <Eigen/Dense>
#include <Eigen/Geometry>
#include <cmath>
#include <utility>

namespace arcad {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Quat = Eigen::Quaterniond;
using VecX = Eigen::VectorXd;

inline constexpr double kPi = 3.14159265358979323846;

inline constexpr double deg2rad(double deg) { return deg * kPi / 180.0; }
inline constexpr double rad2deg(double rad) { return rad * 180.0 / kPi; }

/// Rotate v about a unit axis by angle (Rodrigues formula).
inline Vec3 axis_angle_rotate(const Vec3& v, const Vec3& axis, double angle_rad) {
    const double c = std::cos(angle_rad);
    const double s = std::sin(angle_rad);
    return v * c + axis.cross(v) * s + axis * (axis.dot(v)) * (1.0 - c);
}

inline Mat3 skew(const Vec3& v) {
    Mat3 m;
    m << 0.0, -v.z(), v.y(),
         v.z(), 0.0, -v.x(),
        -v.y(), v.x(), 0.0;
    return m;
}

inline Vec3 vee(const Mat3& m) {
    return Vec3(m(2, 1), m(0, 2), m(1, 0));
}

inline Mat3 yaw_rotation(double yaw_rad) {
    return Eigen::AngleAxisd(yaw_rad, Vec3::UnitZ()).toRotationMatrix();
}

/// ZYX (yaw-pitch-roll) Euler angles, radians, aerospace convention:
/// R = Rz(yaw) * Ry(pitch) * Rx(roll).
inline Mat3 rotation_from_rpy(double roll, double pitch, double yaw) {
    return (Eigen::AngleAxisd(yaw, Vec3::UnitZ()) *
            Eigen::AngleAxisd(pitch, Vec3::UnitY()) *
            Eigen::AngleAxisd(roll, Vec3::UnitX()))
        .toRotationMatrix();
}

/// Inverse of rotation_from_rpy. Pitch is clamped to [-pi/2, pi/2].
inline Vec3 rpy_from_rotation(const Mat3& r) {
    const double pitch = std::asin(std::clamp(-r(2, 0), -1.0, 1.0));
    const double roll = std::atan2(r(2, 1), r(2, 2));
    const double yaw = std::atan2(r(1, 0), r(0, 0));
    return Vec3(roll, pitch, yaw);
}

/// Deterministic right-handed orthonormal basis {x, y, z} with x = unit_x.
inline std::pair<Vec3, Vec3> orthonormal_complement(const Vec3& unit_x) {
    Vec3 ref = std::abs(unit_x.z()) < 0.9 ? Vec3::UnitZ() : Vec3::UnitX();
    Vec3 y = ref.cross(unit_x).normalized();
    Vec3 z = unit_x.cross(y);
    return {y, z};
}

/// Quaternion kinematics: qdot = 1/2 q (x) (0, omega), omega in body frame.
inline Eigen::Vector4d quat_derivative(const Quat& q, const Vec3& omega) {
    Quat omega_q(0.0, omega.x(), omega.y(), omega.z());
    Quat qd = q * omega_q;
    return Eigen::Vector4d(0.5 * qd.w(), 0.5 * qd.x(), 0.5 * qd.y(), 0.5 * qd.z());
}

inline Vec3 clamp_abs(const Vec3& v, const Vec3& limit) {
    return v.cwiseMax(-limit).cwiseMin(limit);
}

} // namespace arcad
