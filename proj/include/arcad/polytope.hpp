#pragma once

#include <array>
#include <vector>

#include "arcad/airframe.hpp"
#include "arcad/math.hpp"
#include "arcad/zonotope_kernels.hpp"

namespace arcad {

using Halfspace = kernels::Halfspace;

/// Convex polytope in vertex + halfspace form. affine_dimension in [0, 3];
/// facets and triangles are populated only for full-dimensional sets.
struct Polytope {
    std::vector<Vec3> vertices;
    std::vector<Halfspace> facets;              // a . x <= b, unit normals
    std::vector<std::array<int, 3>> triangles;  // outward-oriented triangulation
    int affine_dimension = 0;

    bool contains(const Vec3& point, double tol = 1e-9) const;
    double volume() const;
};

/// Convex hull of a 3-D point cloud (incremental algorithm, coplanarity
/// tolerance 1e-9 relative to the cloud's extent). Degenerate inputs come
/// back as lower-dimensional polytopes: a point, a segment, or a planar
/// polygon with counterclockwise vertex order.
Polytope convex_hull(const std::vector<Vec3>& points);

enum class WrenchComponent { Force, Moment };

/// Attainable force or moment set: the image of the thrust box under the
/// selected rows of the allocation matrix (a zonotope), as a polytope of its
/// 2^n corner images. Throws for more than 16 rotors.
Polytope wrench_set(const AllocationMatrix& b, const VecX& thrust_min,
                    const VecX& thrust_max, WrenchComponent component);

/// Attainable accelerations at hover attitude: force vertices scaled by 1/mass
/// and shifted by gravity along +z.
Polytope acceleration_set(const Polytope& force_set, double mass,
                          double gravity = kGravityDefault);

/// Radius of the largest origin-centered sphere inside the polytope;
/// zero when the origin is outside or the set is not full-dimensional.
double omni_radius(const Polytope& acceleration_set);

/// Radius of the largest disk of lateral force available while exactly
/// cancelling the weight: the inscribed-circle radius of the force set's
/// cross-section at vertical force -mass*gravity, centered on the weight
/// point. Zero when that plane misses the set or the set is degenerate.
double lateral_force_radius(const Polytope& force_set, double mass,
                            double gravity = kGravityDefault);

/// Planar slice of a polytope: point = origin + u*e1 + v*e2 for (u, v) in the
/// polygon. Vertices are counterclockwise about +axis; empty when the plane
/// misses the polytope.
struct CrossSection {
    std::vector<Eigen::Vector2d> vertices;
    Vec3 origin = Vec3::Zero();
    Vec3 e1 = Vec3::UnitX();
    Vec3 e2 = Vec3::UnitY();

    bool empty() const { return vertices.size() < 3; }
    double area() const;
};

/// Intersection of a full-dimensional polytope with {x : axis . x = offset}.
/// Throws DimensionError for degenerate polytopes.
CrossSection cross_section(const Polytope& polytope, const Vec3& axis, double offset);

} // namespace arcad
