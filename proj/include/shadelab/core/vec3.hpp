#pragma once

#include <cmath>
#include <stdexcept>

namespace shadelab {

inline constexpr double kPi = 3.14159265358979323846;

/// Three-component vector used for positions, normals and directions.
struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    constexpr Vec3() = default;
    constexpr Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

    constexpr Vec3 operator-() const { return {-x, -y, -z}; }
    constexpr Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
    constexpr Vec3& operator-=(const Vec3& o) { x -= o.x; y -= o.y; z -= o.z; return *this; }
    constexpr Vec3& operator*=(double s) { x *= s; y *= s; z *= s; return *this; }

    friend constexpr Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
    friend constexpr Vec3 operator-(Vec3 a, const Vec3& b) { return a -= b; }
    friend constexpr Vec3 operator*(Vec3 a, double s) { return a *= s; }
    friend constexpr Vec3 operator*(double s, Vec3 a) { return a *= s; }
    friend constexpr Vec3 operator/(Vec3 a, double s) { return a *= (1.0 / s); }
    friend constexpr bool operator==(const Vec3&, const Vec3&) = default;
};

constexpr double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double length(const Vec3& v) { return std::sqrt(dot(v, v)); }

/// Unit vector along v. Throws for the zero vector.
inline Vec3 normalize(const Vec3& v) {
    const double len = length(v);
    if (!(len > 0.0) || !std::isfinite(len)) {
        throw std::invalid_argument("cannot normalize a zero or non-finite vector");
    }
    return v / len;
}

/// Mirror direction of `incident` (pointing away from the surface) about `normal`.
constexpr Vec3 reflect(const Vec3& incident, const Vec3& normal) {
    return 2.0 * dot(normal, incident) * normal - incident;
}

inline double angle_between(const Vec3& a, const Vec3& b) {
    // atan2 form stays accurate for nearly parallel vectors
    return std::atan2(length(cross(a, b)), dot(a, b));
}

/// Right-handed orthonormal frame with `axis` as its third vector.
struct Frame {
    Vec3 tangent;
    Vec3 bitangent;
    Vec3 axis;

    /// Branchless construction (Duff et al. 2017); exact for axis-aligned inputs.
    static Frame around(const Vec3& n) {
        const double sign = std::copysign(1.0, n.z);
        const double a = -1.0 / (sign + n.z);
        const double b = n.x * n.y * a;
        return {Vec3{1.0 + sign * n.x * n.x * a, sign * b, -sign * n.x},
                Vec3{b, sign + n.y * n.y * a, -n.y}, n};
    }

    Vec3 to_world(const Vec3& local) const {
        return local.x * tangent + local.y * bitangent + local.z * axis;
    }
    Vec3 to_local(const Vec3& world) const {
        return {dot(world, tangent), dot(world, bitangent), dot(world, axis)};
    }
};

inline double degrees(double radians) { return radians * 180.0 / kPi; }
inline double radians(double degrees) { return degrees * kPi / 180.0; }

}  // namespace shadelab
