#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <variant>
#include <vector>

#include "shadelab/core/camera.hpp"
#include "shadelab/core/vec3.hpp"

namespace shadelab {

inline constexpr double kMinHitDistance = 1e-9;

struct Sphere {
    Vec3 center;
    double radius = 1.0;
};

/// Circular hole in a plane, measured in the plane's own tangent frame.
struct Cutout {
    Vec3 center;
    double radius = 0.0;
};

struct Plane {
    Vec3 point;
    Vec3 normal{0.0, 0.0, 1.0};
    std::vector<Cutout> cutouts;
};

enum class CapOrientation { bump, dent };

/// Spherical cap: the part of the sphere (center, radius) within
/// `max_polar_angle` of `axis`. Its rim lies in the base plane at height
/// radius * cos(max_polar_angle) above `center`. A dent is the bump mirrored
/// through that base plane and exposes its concave side.
struct PolarCap {
    Vec3 center;
    double radius = 1.0;
    Vec3 axis{0.0, 0.0, 1.0};
    double max_polar_angle = kPi / 2.0;
    CapOrientation orientation = CapOrientation::bump;

    double base_height() const { return radius * std::cos(max_polar_angle); }
    double rim_radius() const { return radius * std::sin(max_polar_angle); }
    Vec3 base_center() const { return center + base_height() * axis; }
};

using SurfacePatch = std::variant<Sphere, Plane, PolarCap>;

struct Hit {
    double t = 0.0;
    Vec3 point;
    Vec3 normal;
};

/// Throws std::invalid_argument for malformed primitives.
inline void validate(const SurfacePatch& patch) {
    std::visit(
        [](const auto& p) {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, Sphere>) {
                if (!(p.radius > 0.0)) throw std::invalid_argument("sphere radius must be positive");
            } else if constexpr (std::is_same_v<T, Plane>) {
                if (!(length(p.normal) > 0.0)) throw std::invalid_argument("plane normal is zero");
            } else {
                if (!(p.radius > 0.0)) throw std::invalid_argument("polar cap radius must be positive");
                if (!(p.max_polar_angle > 0.0 && p.max_polar_angle <= kPi / 2.0 + 1e-12)) {
                    throw std::invalid_argument("polar cap angle must lie in (0, pi/2]");
                }
                if (!(length(p.axis) > 0.0)) throw std::invalid_argument("polar cap axis is zero");
            }
        },
        patch);
}

namespace detail {

/// Roots of |origin + t*dir - center|^2 = r^2 for unit `dir`, ascending.
inline std::optional<std::pair<double, double>> sphere_roots(const Vec3& origin, const Vec3& dir,
                                                             const Vec3& center, double radius) {
    const Vec3 oc = origin - center;
    const double b = dot(oc, dir);
    const double c = dot(oc, oc) - radius * radius;
    const double disc = b * b - c;
    if (disc < 0.0) return std::nullopt;
    const double s = std::sqrt(disc);
    // Stable form: avoid cancellation in -b +- s.
    const double q = (b > 0.0) ? -(b + s) : -(b - s);
    double t0 = q;
    double t1 = (q != 0.0) ? c / q : -b;
    if (t0 > t1) std::swap(t0, t1);
    return std::pair{t0, t1};
}

inline std::optional<Hit> intersect_sphere(const Ray& ray, const Sphere& s) {
    const auto roots = sphere_roots(ray.origin, ray.direction, s.center, s.radius);
    if (!roots) return std::nullopt;
    for (double t : {roots->first, roots->second}) {
        if (t > kMinHitDistance) {
            const Vec3 p = ray.at(t);
            return Hit{t, p, (p - s.center) / s.radius};
        }
    }
    return std::nullopt;
}

inline std::optional<Hit> intersect_plane(const Ray& ray, const Plane& pl) {
    const Vec3 n = normalize(pl.normal);
    const double denom = dot(n, ray.direction);
    if (denom == 0.0) return std::nullopt;
    const double t = dot(pl.point - ray.origin, n) / denom;
    if (!(t > kMinHitDistance)) return std::nullopt;
    const Vec3 p = ray.at(t);
    if (!pl.cutouts.empty()) {
        const Frame f = Frame::around(n);
        for (const Cutout& hole : pl.cutouts) {
            const Vec3 local = f.to_local(p - hole.center);
            if (local.x * local.x + local.y * local.y <= hole.radius * hole.radius) return std::nullopt;
        }
    }
    return Hit{t, p, denom > 0.0 ? -n : n};
}

/// Caps are intersected in "bump space": the local frame around the axis with
/// the origin on the base plane, mirrored along the axis for dents. The
/// tangential normal components are taken straight from the hit position and
/// the axial one from the unit-length constraint, so a dent's normal is the
/// bump's with tangential components negated, bit for bit.
inline std::optional<Hit> intersect_cap(const Ray& ray, const PolarCap& cap) {
    const Vec3 axis = normalize(cap.axis);
    const Frame f = Frame::around(axis);
    const double h = cap.base_height();
    const Vec3 base = cap.center + h * axis;
    const bool dent = cap.orientation == CapOrientation::dent;

    Vec3 o = f.to_local(ray.origin - base);
    Vec3 d = f.to_local(ray.direction);
    if (dent) {
        o.z = -o.z;
        d.z = -d.z;
    }
    const Vec3 sphere_center{0.0, 0.0, -h};
    const auto roots = sphere_roots(o, d, sphere_center, cap.radius);
    if (!roots) return std::nullopt;

    const double rim = cap.rim_radius();
    for (double t : {roots->first, roots->second}) {
        if (!(t > kMinHitDistance)) continue;
        const Vec3 q = o + t * d;
        const double lateral2 = q.x * q.x + q.y * q.y;
        if (q.z + h < 0.0 || lateral2 > rim * rim) continue;

        const double nx = q.x / cap.radius;
        const double ny = q.y / cap.radius;
        const double nz = std::sqrt(std::max(0.0, 1.0 - nx * nx - ny * ny));
        Vec3 local_point = q;
        Vec3 local_normal{nx, ny, nz};
        if (dent) {
            local_point.z = -local_point.z;
            local_normal = Vec3{-nx, -ny, nz};
        }
        return Hit{t, base + f.to_world(local_point), f.to_world(local_normal)};
    }
    return std::nullopt;
}

}  // namespace detail

/// Nearest intersection with positive distance. `ray.direction` must be unit length.
inline std::optional<Hit> intersect(const Ray& ray, const SurfacePatch& patch) {
    return std::visit(
        [&ray](const auto& p) -> std::optional<Hit> {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, Sphere>) {
                return detail::intersect_sphere(ray, p);
            } else if constexpr (std::is_same_v<T, Plane>) {
                return detail::intersect_plane(ray, p);
            } else {
                return detail::intersect_cap(ray, p);
            }
        },
        patch);
}

}  // namespace shadelab
