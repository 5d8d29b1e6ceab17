#include "arcad/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <utility>

#include "arcad/errors.hpp"

namespace arcad {

namespace {

constexpr double kRelTol = 1e-9;

double cloud_extent(const std::vector<Vec3>& points) {
    Vec3 lo = points.front(), hi = points.front();
    for (const Vec3& p : points) {
        lo = lo.cwiseMin(p);
        hi = hi.cwiseMax(p);
    }
    return (hi - lo).norm();
}

std::vector<Vec3> dedupe(const std::vector<Vec3>& points, double tol) {
    std::vector<int> order(points.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        const Vec3 &pa = points[a], &pb = points[b];
        if (pa.x() != pb.x()) return pa.x() < pb.x();
        if (pa.y() != pb.y()) return pa.y() < pb.y();
        return pa.z() < pb.z();
    });
    std::vector<Vec3> unique;
    unique.reserve(points.size());
    for (int idx : order) {
        if (unique.empty() || (points[idx] - unique.back()).norm() > tol) {
            unique.push_back(points[idx]);
        }
    }
    return unique;
}

struct Face {
    int a, b, c;
    Vec3 normal;
    double offset;
    bool alive = true;
};

Face make_face(const std::vector<Vec3>& pts, int a, int b, int c) {
    Face f{a, b, c, Vec3::Zero(), 0.0, true};
    f.normal = (pts[b] - pts[a]).cross(pts[c] - pts[a]);
    const double len = f.normal.norm();
    if (len > 0.0) f.normal /= len;
    f.offset = f.normal.dot(pts[a]);
    return f;
}

// 2-D monotone chain; input projected coordinates, returns CCW hull indices.
std::vector<int> hull_2d(const std::vector<Eigen::Vector2d>& pts, double eps_area) {
    std::vector<int> order(pts.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (pts[a].x() != pts[b].x()) return pts[a].x() < pts[b].x();
        return pts[a].y() < pts[b].y();
    });
    auto cross = [&](int o, int a, int b) {
        const Eigen::Vector2d u = pts[a] - pts[o];
        const Eigen::Vector2d v = pts[b] - pts[o];
        return u.x() * v.y() - u.y() * v.x();
    };
    std::vector<int> hull(2 * order.size());
    int k = 0;
    for (size_t i = 0; i < order.size(); ++i) { // lower chain
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], order[i]) <= eps_area) --k;
        hull[k++] = order[i];
    }
    const int lower = k + 1;
    for (int i = static_cast<int>(order.size()) - 2; i >= 0; --i) { // upper chain
        while (k >= lower && cross(hull[k - 2], hull[k - 1], order[i]) <= eps_area) --k;
        hull[k++] = order[i];
    }
    hull.resize(std::max(1, k - 1));
    return hull;
}

Polytope hull_degenerate(const std::vector<Vec3>& pts, int dim, const Vec3& origin,
                         const Vec3& e1, const Vec3& e2, double eps_area) {
    Polytope poly;
    poly.affine_dimension = dim;
    if (dim == 0) {
        poly.vertices.push_back(pts.front());
        return poly;
    }
    if (dim == 1) {
        int lo = 0, hi = 0;
        for (size_t i = 1; i < pts.size(); ++i) {
            const double t = (pts[i] - origin).dot(e1);
            if (t < (pts[lo] - origin).dot(e1)) lo = static_cast<int>(i);
            if (t > (pts[hi] - origin).dot(e1)) hi = static_cast<int>(i);
        }
        poly.vertices.push_back(pts[lo]);
        if (hi != lo) poly.vertices.push_back(pts[hi]);
        return poly;
    }
    std::vector<Eigen::Vector2d> planar(pts.size());
    for (size_t i = 0; i < pts.size(); ++i) {
        planar[i] = {(pts[i] - origin).dot(e1), (pts[i] - origin).dot(e2)};
    }
    for (int idx : hull_2d(planar, eps_area)) poly.vertices.push_back(pts[idx]);
    return poly;
}

// Merges coplanar adjacent triangles into facet halfspaces (union-find).
void extract_facets(Polytope& poly, double tol) {
    const auto& tris = poly.triangles;
    const auto& verts = poly.vertices;
    std::vector<Vec3> normals(tris.size());
    std::vector<double> offsets(tris.size());
    for (size_t i = 0; i < tris.size(); ++i) {
        const auto& t = tris[i];
        normals[i] =
            (verts[t[1]] - verts[t[0]]).cross(verts[t[2]] - verts[t[0]]).normalized();
        offsets[i] = normals[i].dot(verts[t[0]]);
    }

    std::vector<int> parent(tris.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };

    std::map<std::pair<int, int>, int> edge_face;
    for (size_t i = 0; i < tris.size(); ++i) {
        const auto& t = tris[i];
        const int e[3][2] = {{t[0], t[1]}, {t[1], t[2]}, {t[2], t[0]}};
        for (const auto& ed : e) {
            const auto key = std::minmax(ed[0], ed[1]);
            auto it = edge_face.find(key);
            if (it == edge_face.end()) {
                edge_face[key] = static_cast<int>(i);
                continue;
            }
            const int j = it->second;
            if (normals[i].dot(normals[j]) > 1.0 - kRelTol &&
                std::abs(offsets[i] - offsets[j]) <= tol) {
                parent[find(static_cast<int>(i))] = find(j);
            }
        }
    }

    std::map<int, Halfspace> groups;
    for (size_t i = 0; i < tris.size(); ++i) {
        const int root = find(static_cast<int>(i));
        auto [it, fresh] = groups.try_emplace(root, Halfspace{normals[i], offsets[i]});
        if (!fresh) {
            // Keep the group's offset supporting: no vertex may lie beyond it.
            it->second.offset = std::max(it->second.offset, offsets[i]);
        }
    }
    poly.facets.clear();
    poly.facets.reserve(groups.size());
    for (auto& [root, hs] : groups) poly.facets.push_back(hs);
}

} // namespace

Polytope convex_hull(const std::vector<Vec3>& points) {
    if (points.empty()) throw std::invalid_argument("convex hull of an empty point set");

    const double extent = cloud_extent(points);
    const double tol = kRelTol * std::max(1.0, extent);
    const std::vector<Vec3> pts = dedupe(points, 1e-12 * std::max(1.0, extent));

    // Affine-dimension probe: farthest point, then farthest from line/plane.
    int i0 = 0, i1 = 0;
    for (size_t i = 1; i < pts.size(); ++i) {
        if ((pts[i] - pts[i0]).norm() > (pts[i1] - pts[i0]).norm()) i1 = static_cast<int>(i);
    }
    if ((pts[i1] - pts[i0]).norm() <= tol) {
        return hull_degenerate(pts, 0, pts[i0], Vec3::UnitX(), Vec3::UnitY(), tol * extent);
    }
    const Vec3 e1 = (pts[i1] - pts[i0]).normalized();

    int i2 = -1;
    double best = tol;
    for (size_t i = 0; i < pts.size(); ++i) {
        const Vec3 d = pts[i] - pts[i0];
        const double dist = (d - d.dot(e1) * e1).norm();
        if (dist > best) {
            best = dist;
            i2 = static_cast<int>(i);
        }
    }
    if (i2 < 0) {
        return hull_degenerate(pts, 1, pts[i0], e1, Vec3::Zero(), tol * extent);
    }
    Vec3 e2 = pts[i2] - pts[i0];
    e2 = (e2 - e2.dot(e1) * e1).normalized();
    const Vec3 plane_normal = e1.cross(e2);

    int i3 = -1;
    best = tol;
    for (size_t i = 0; i < pts.size(); ++i) {
        const double dist = std::abs((pts[i] - pts[i0]).dot(plane_normal));
        if (dist > best) {
            best = dist;
            i3 = static_cast<int>(i);
        }
    }
    if (i3 < 0) {
        return hull_degenerate(pts, 2, pts[i0], e1, e2, tol * std::max(1.0, extent));
    }

    // Incremental hull from the initial tetrahedron.
    std::vector<Face> faces;
    {
        const Vec3 centroid = (pts[i0] + pts[i1] + pts[i2] + pts[i3]) / 4.0;
        const int tet[4][3] = {{i0, i1, i2}, {i0, i1, i3}, {i0, i2, i3}, {i1, i2, i3}};
        for (const auto& t : tet) {
            Face f = make_face(pts, t[0], t[1], t[2]);
            if (f.normal.dot(centroid) > f.offset) {
                f = make_face(pts, t[0], t[2], t[1]);
            }
            faces.push_back(f);
        }
    }

    std::vector<int> visible;
    for (int p = 0; p < static_cast<int>(pts.size()); ++p) {
        if (p == i0 || p == i1 || p == i2 || p == i3) continue;
        visible.clear();
        for (size_t f = 0; f < faces.size(); ++f) {
            if (faces[f].alive && faces[f].normal.dot(pts[p]) - faces[f].offset > tol) {
                visible.push_back(static_cast<int>(f));
            }
        }
        if (visible.empty()) continue;

        // Horizon: directed edges of visible faces whose reverse edge is not
        // itself part of the visible set.
        std::map<std::pair<int, int>, bool> edges;
        for (int f : visible) {
            const Face& face = faces[f];
            const int e[3][2] = {{face.a, face.b}, {face.b, face.c}, {face.c, face.a}};
            for (const auto& ed : e) edges[{ed[0], ed[1]}] = true;
        }
        for (int f : visible) faces[f].alive = false;
        for (const auto& [edge, unused] : edges) {
            if (edges.count({edge.second, edge.first})) continue; // interior edge
            faces.push_back(make_face(pts, edge.first, edge.second, p));
        }
    }

    // Compact vertices to those actually used by surviving faces.
    std::vector<int> remap(pts.size(), -1);
    Polytope poly;
    poly.affine_dimension = 3;
    for (const Face& f : faces) {
        if (!f.alive) continue;
        for (int v : {f.a, f.b, f.c}) {
            if (remap[v] < 0) {
                remap[v] = static_cast<int>(poly.vertices.size());
                poly.vertices.push_back(pts[v]);
            }
        }
        poly.triangles.push_back({remap[f.a], remap[f.b], remap[f.c]});
    }
    extract_facets(poly, tol);
    return poly;
}

bool Polytope::contains(const Vec3& point, double tol) const {
    switch (affine_dimension) {
    case 3:
        for (const Halfspace& h : facets) {
            if (h.normal.dot(point) > h.offset + tol) return false;
        }
        return true;
    case 2: {
        const Vec3 n =
            (vertices[1] - vertices[0]).cross(vertices[2] - vertices[0]).normalized();
        if (std::abs(n.dot(point - vertices[0])) > tol) return false;
        for (size_t i = 0; i < vertices.size(); ++i) {
            const Vec3& a = vertices[i];
            const Vec3& b = vertices[(i + 1) % vertices.size()];
            if ((b - a).cross(point - a).dot(n) < -tol) return false;
        }
        return true;
    }
    case 1: {
        const Vec3 d = vertices[1] - vertices[0];
        const double t =
            std::clamp((point - vertices[0]).dot(d) / d.squaredNorm(), 0.0, 1.0);
        return (point - (vertices[0] + t * d)).norm() <= tol;
    }
    default:
        return (point - vertices[0]).norm() <= tol;
    }
}

double Polytope::volume() const {
    if (affine_dimension < 3) return 0.0;
    double six_v = 0.0;
    for (const auto& t : triangles) {
        six_v += vertices[t[0]].dot(vertices[t[1]].cross(vertices[t[2]]));
    }
    return std::abs(six_v) / 6.0;
}

Polytope wrench_set(const AllocationMatrix& b, const VecX& thrust_min,
                    const VecX& thrust_max, WrenchComponent component) {
    const int n = b.rotor_count();
    if (n > 16) {
        throw std::invalid_argument(
            "wrench_set enumerates 2^n thrust-box corners and supports at most 16 "
            "rotors; larger systems need a sampling approach");
    }
    if (thrust_min.size() != n || thrust_max.size() != n) {
        throw DimensionError("thrust limit vectors must have one entry per rotor");
    }
    const Eigen::Matrix3Xd generators =
        component == WrenchComponent::Force ? b.force_rows() : b.moment_rows();
    std::vector<Vec3> images;
    kernels::corner_images(generators, thrust_min, thrust_max, images);
    return convex_hull(images);
}

Polytope acceleration_set(const Polytope& force_set, double mass, double gravity) {
    Polytope accel = force_set;
    const Vec3 shift(0.0, 0.0, gravity);
    for (Vec3& v : accel.vertices) v = v / mass + shift;
    for (Halfspace& h : accel.facets) {
        h.offset = h.offset / mass + h.normal.dot(shift);
    }
    return accel;
}

double omni_radius(const Polytope& acceleration_set) {
    if (acceleration_set.affine_dimension < 3) return 0.0;
    double radius = std::numeric_limits<double>::infinity();
    for (const Halfspace& h : acceleration_set.facets) {
        radius = std::min(radius, h.offset);
    }
    return std::max(radius, 0.0);
}

double CrossSection::area() const {
    double twice = 0.0;
    for (size_t i = 0; i < vertices.size(); ++i) {
        const Eigen::Vector2d& a = vertices[i];
        const Eigen::Vector2d& b = vertices[(i + 1) % vertices.size()];
        twice += a.x() * b.y() - a.y() * b.x();
    }
    return std::abs(twice) / 2.0;
}

CrossSection cross_section(const Polytope& polytope, const Vec3& axis, double offset) {
    if (polytope.affine_dimension < 3) {
        throw DimensionError("cross_section requires a full-dimensional polytope");
    }
    CrossSection section;
    section.origin = offset * axis;
    auto [e1, e2] = orthonormal_complement(axis);
    section.e1 = e1;
    section.e2 = e2;

    double reach = 1.0 + std::abs(offset);
    for (const Vec3& v : polytope.vertices) reach = std::max(reach, v.norm());
    reach *= 2.0;

    // Start from a large square in the plane and clip by every facet.
    std::vector<Eigen::Vector2d> poly = {
        {-reach, -reach}, {reach, -reach}, {reach, reach}, {-reach, reach}};
    const double tol = kRelTol * reach;

    for (const Halfspace& h : polytope.facets) {
        const double alpha = h.normal.dot(e1);
        const double beta = h.normal.dot(e2);
        const double gamma = h.offset - h.normal.dot(section.origin);
        if (std::hypot(alpha, beta) < 1e-12) {
            if (gamma < -tol) return section; // plane entirely outside this facet
            continue;
        }
        std::vector<Eigen::Vector2d> clipped;
        clipped.reserve(poly.size() + 1);
        for (size_t i = 0; i < poly.size(); ++i) {
            const Eigen::Vector2d& cur = poly[i];
            const Eigen::Vector2d& nxt = poly[(i + 1) % poly.size()];
            const double d_cur = alpha * cur.x() + beta * cur.y() - gamma;
            const double d_nxt = alpha * nxt.x() + beta * nxt.y() - gamma;
            if (d_cur <= 0.0) clipped.push_back(cur);
            if ((d_cur < 0.0 && d_nxt > 0.0) || (d_cur > 0.0 && d_nxt <= 0.0)) {
                const double t = d_cur / (d_cur - d_nxt);
                clipped.push_back(cur + t * (nxt - cur));
            }
        }
        poly = std::move(clipped);
        if (poly.size() < 3) {
            poly.clear();
            break;
        }
    }

    // Drop near-duplicate corners introduced by clipping.
    std::vector<Eigen::Vector2d> cleaned;
    for (const Eigen::Vector2d& p : poly) {
        if (cleaned.empty() || (p - cleaned.back()).norm() > tol) cleaned.push_back(p);
    }
    if (cleaned.size() > 2 && (cleaned.front() - cleaned.back()).norm() <= tol) {
        cleaned.pop_back();
    }
    if (cleaned.size() >= 3) section.vertices = std::move(cleaned);
    return section;
}

double lateral_force_radius(const Polytope& force_set, double mass, double gravity) {
    if (force_set.affine_dimension < 3) return 0.0;
    const double plane_z = -mass * gravity;

    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (const Vec3& v : force_set.vertices) {
        lo = std::min(lo, v.z());
        hi = std::max(hi, v.z());
    }
    if (plane_z < lo || plane_z > hi) return 0.0;

    const CrossSection section = cross_section(force_set, Vec3::UnitZ(), plane_z);
    if (section.empty()) return 0.0;

    // Inscribed circle about the weight point, which is the plane origin.
    double radius = std::numeric_limits<double>::infinity();
    const size_t n = section.vertices.size();
    for (size_t i = 0; i < n; ++i) {
        const Eigen::Vector2d& a = section.vertices[i];
        const Eigen::Vector2d& b = section.vertices[(i + 1) % n];
        const Eigen::Vector2d d = b - a;
        const double len = d.norm();
        if (len < 1e-15) continue;
        const double signed_dist = (d.x() * (-a.y()) - d.y() * (-a.x())) / len;
        if (signed_dist < 0.0) return 0.0; // origin outside the section
        radius = std::min(radius, signed_dist);
    }
    return std::isfinite(radius) ? radius : 0.0;
}

} // namespace arcad
