#include "arcad/zonotope_kernels.hpp"

#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace arcad::kernels {

namespace {
// Below this many corners the OpenMP fork/join overhead dominates.
constexpr std::size_t kParallelThreshold = 1u << 12;

inline Vec3 corner_image(const Eigen::Matrix3Xd& generators, const VecX& lo,
                         const VecX& hi, std::size_t corner) {
    Vec3 image = Vec3::Zero();
    const int n = static_cast<int>(generators.cols());
    for (int i = 0; i < n; ++i) {
        const double u = (corner >> i) & 1u ? hi(i) : lo(i);
        image += generators.col(i) * u;
    }
    return image;
}
} // namespace

std::size_t corner_count(int n) {
    if (n < 0 || n > 16) throw std::invalid_argument("corner_count: n out of range");
    return std::size_t{1} << n;
}

void corner_images_serial(const Eigen::Matrix3Xd& generators, const VecX& lo,
                          const VecX& hi, std::vector<Vec3>& out) {
    const std::size_t count = corner_count(static_cast<int>(generators.cols()));
    out.resize(count);
    for (std::size_t k = 0; k < count; ++k) {
        out[k] = corner_image(generators, lo, hi, k);
    }
}

void corner_images_parallel(const Eigen::Matrix3Xd& generators, const VecX& lo,
                            const VecX& hi, std::vector<Vec3>& out) {
    const std::size_t count = corner_count(static_cast<int>(generators.cols()));
    out.resize(count);
    const std::int64_t n = static_cast<std::int64_t>(count);
#pragma omp parallel for schedule(static)
    for (std::int64_t k = 0; k < n; ++k) {
        out[static_cast<std::size_t>(k)] =
            corner_image(generators, lo, hi, static_cast<std::size_t>(k));
    }
}

void corner_images(const Eigen::Matrix3Xd& generators, const VecX& lo, const VecX& hi,
                   std::vector<Vec3>& out) {
    const std::size_t count = corner_count(static_cast<int>(generators.cols()));
#ifdef _OPENMP
    if (count >= kParallelThreshold) {
        corner_images_parallel(generators, lo, hi, out);
        return;
    }
#endif
    corner_images_serial(generators, lo, hi, out);
}

namespace {
inline bool outside(const Vec3& p, const std::vector<Halfspace>& halfspaces, double tol) {
    for (const Halfspace& h : halfspaces) {
        if (h.normal.dot(p) > h.offset + tol) return true;
    }
    return false;
}
} // namespace

std::size_t count_outside_serial(const std::vector<Vec3>& points,
                                 const std::vector<Halfspace>& halfspaces, double tol) {
    std::size_t count = 0;
    for (const Vec3& p : points) {
        if (outside(p, halfspaces, tol)) ++count;
    }
    return count;
}

std::size_t count_outside_parallel(const std::vector<Vec3>& points,
                                   const std::vector<Halfspace>& halfspaces, double tol) {
    const std::int64_t n = static_cast<std::int64_t>(points.size());
    std::int64_t count = 0;
#pragma omp parallel for schedule(static) reduction(+ : count)
    for (std::int64_t i = 0; i < n; ++i) {
        if (outside(points[static_cast<std::size_t>(i)], halfspaces, tol)) ++count;
    }
    return static_cast<std::size_t>(count);
}

std::size_t count_outside(const std::vector<Vec3>& points,
                          const std::vector<Halfspace>& halfspaces, double tol) {
#ifdef _OPENMP
    if (points.size() >= kParallelThreshold) {
        return count_outside_parallel(points, halfspaces, tol);
    }
#endif
    return count_outside_serial(points, halfspaces, tol);
}

} // namespace arcad::kernels
