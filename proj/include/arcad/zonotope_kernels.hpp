#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "arcad/math.hpp"

namespace arcad::kernels {

/// Halfspace {x : normal . x <= offset}, normal unit length.
struct Halfspace {
    Vec3 normal = Vec3::UnitZ();
    double offset = 0.0;
};

/// Number of corners of the box [lo, hi]^n (2^n). n is capped at 16 upstream.
std::size_t corner_count(int n);

// Images of every box corner under the 3xn generator matrix. Corner k takes
// hi(i) where bit i of k is set, lo(i) otherwise; out[k] is written in index
// order, so serial and parallel variants produce identical bytes. The
// parallel variants are OpenMP; the serial ones are the reference kept for
// testing and for small inputs where a thread team costs more than the work.

void corner_images_serial(const Eigen::Matrix3Xd& generators, const VecX& lo,
                          const VecX& hi, std::vector<Vec3>& out);
void corner_images_parallel(const Eigen::Matrix3Xd& generators, const VecX& lo,
                            const VecX& hi, std::vector<Vec3>& out);
/// Dispatches to the parallel kernel for large corner counts.
void corner_images(const Eigen::Matrix3Xd& generators, const VecX& lo, const VecX& hi,
                   std::vector<Vec3>& out);

// Count of points violating at least one halfspace by more than tol.

std::size_t count_outside_serial(const std::vector<Vec3>& points,
                                 const std::vector<Halfspace>& halfspaces, double tol);
std::size_t count_outside_parallel(const std::vector<Vec3>& points,
                                   const std::vector<Halfspace>& halfspaces, double tol);
std::size_t count_outside(const std::vector<Vec3>& points,
                          const std::vector<Halfspace>& halfspaces, double tol);

} // namespace arcad::kernels
