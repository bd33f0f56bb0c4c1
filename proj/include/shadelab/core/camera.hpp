#pragma once

#include <stdexcept>

#include "shadelab/core/vec3.hpp"

namespace shadelab {

struct Ray {
    Vec3 origin;
    Vec3 direction;  // unit length

    Vec3 at(double t) const { return origin + t * direction; }
};

enum class Projection { orthographic, perspective };

/// Pinhole or parallel camera.
///
/// `fov_or_extent` is the full vertical extent of the view in scene units for
/// orthographic cameras and the full vertical field of view in degrees for
/// perspective ones. Pixel (0, 0) is the top-left corner; rays pass through
/// pixel centres.
struct Camera {
    Projection kind = Projection::perspective;
    Vec3 position{0.0, 0.0, 5.0};
    Vec3 view_dir{0.0, 0.0, -1.0};
    Vec3 up{0.0, 1.0, 0.0};
    int width_px = 512;
    int height_px = 512;
    double fov_or_extent = 40.0;

    /// Throws std::invalid_argument for degenerate configurations.
    void validate() const {
        if (width_px < 1 || height_px < 1) {
            throw std::invalid_argument("camera resolution must be at least 1x1");
        }
        if (!(length(view_dir) > 0.0)) {
            throw std::invalid_argument("camera view direction is zero");
        }
        if (!(length(cross(view_dir, up)) > 1e-12 * length(view_dir) * length(up))) {
            throw std::invalid_argument("camera up vector is parallel to the view direction");
        }
        if (kind == Projection::orthographic && !(fov_or_extent > 0.0)) {
            throw std::invalid_argument("orthographic extent must be positive");
        }
        if (kind == Projection::perspective && !(fov_or_extent > 0.0 && fov_or_extent < 180.0)) {
            throw std::invalid_argument("perspective field of view must lie in (0, 180) degrees");
        }
    }

    /// Orthonormal camera basis: right, true up, forward.
    Frame basis() const {
        const Vec3 forward = normalize(view_dir);
        const Vec3 right = normalize(cross(forward, up));
        const Vec3 true_up = cross(right, forward);
        return {right, true_up, forward};
    }

    Vec3 forward() const { return normalize(view_dir); }

    /// Primary ray through the given (possibly fractional) pixel coordinate.
    Ray ray_through(double px, double py) const {
        const Frame f = basis();
        const double aspect = static_cast<double>(width_px) / static_cast<double>(height_px);
        // Normalised device coordinates in [-1, 1], y up.
        const double sx = (2.0 * px / width_px - 1.0) * aspect;
        const double sy = 1.0 - 2.0 * py / height_px;
        if (kind == Projection::orthographic) {
            const double half = 0.5 * fov_or_extent;
            return {position + (sx * half) * f.tangent + (sy * half) * f.bitangent, f.axis};
        }
        const double half_tan = std::tan(radians(0.5 * fov_or_extent));
        return {position, normalize(f.axis + (sx * half_tan) * f.tangent + (sy * half_tan) * f.bitangent)};
    }

    Ray pixel_ray(int x, int y) const { return ray_through(x + 0.5, y + 0.5); }

    /// Scene-space size of one pixel for orthographic cameras.
    double pixel_size() const { return fov_or_extent / height_px; }
};

}  // namespace shadelab
