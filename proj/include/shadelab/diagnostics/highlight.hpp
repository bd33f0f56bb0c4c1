#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "shadelab/core/framebuffer.hpp"
#include "shadelab/core/geometry.hpp"
#include "shadelab/renderer/render.hpp"

namespace shadelab::diagnostics {

/// Half-width at half-maximum of the Phong lobe: the angle alpha with
/// cos(alpha)^m = 1/2.
inline double highlight_half_angle(double shininess) {
    if (!(shininess > 0.0)) throw std::invalid_argument("half angle is undefined for shininess <= 0");
    // 1 - 2^(-1/m) without cancellation, then alpha = 2 asin(sqrt((1 - cos alpha) / 2)).
    const double one_minus_cos = -std::expm1(-std::log(2.0) / shininess);
    return 2.0 * std::asin(std::sqrt(0.5 * one_minus_cos));
}

struct HighlightMeasurement {
    double half_angle = 0.0;        // radians, in mirror-direction space
    double pixel_footprint = 0.0;   // mirror-direction angle spanned by one pixel at the peak
    int pixels = 0;                 // pixels at or above half maximum
    double peak = 0.0;
};

/// Angular radius of the half-maximum highlight on a rendered sphere.
///
/// Expects a render of `sphere` under one directional light (`to_light`) with
/// no diffuse term. For each half-maximum pixel the mirror direction of the
/// light about the pixel's normal is compared with the mirror direction at the
/// peak pixel; the largest angle is the highlight radius, directly comparable
/// with highlight_half_angle.
inline HighlightMeasurement measure_highlight_size(const Framebuffer& fb, const Camera& camera,
                                                   const Sphere& sphere, const Vec3& to_light) {
    if (fb.width() != camera.width_px || fb.height() != camera.height_px) {
        throw std::invalid_argument("framebuffer does not match the camera");
    }
    const Vec3 l = normalize(to_light);
    std::vector<std::optional<Vec3>> normals(fb.size());
    double peak = 0.0;
    int px = -1;
    int py = -1;
    for (int y = 0; y < fb.height(); ++y) {
        for (int x = 0; x < fb.width(); ++x) {
            const auto hit = intersect(camera.pixel_ray(x, y), SurfacePatch{sphere});
            if (!hit) continue;
            normals[fb.index(x, y)] = hit->normal;
            const double v = fb.at(x, y).mean();
            if (v > peak) {
                peak = v;
                px = x;
                py = y;
            }
        }
    }
    if (!(peak > 0.0)) throw std::runtime_error("no highlight found on the sphere");

    const Vec3 peak_dir = reflect(l, *normals[fb.index(px, py)]);
    HighlightMeasurement m;
    m.peak = peak;
    for (int y = 0; y < fb.height(); ++y) {
        for (int x = 0; x < fb.width(); ++x) {
            const auto& n = normals[fb.index(x, y)];
            if (!n || fb.at(x, y).mean() < 0.5 * peak) continue;
            ++m.pixels;
            m.half_angle = std::max(m.half_angle, angle_between(reflect(l, *n), peak_dir));
        }
    }
    const int offsets[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
    for (const auto& o : offsets) {
        const int x = px + o[0];
        const int y = py + o[1];
        if (x < 0 || y < 0 || x >= fb.width() || y >= fb.height()) continue;
        if (const auto& n = normals[fb.index(x, y)]) {
            m.pixel_footprint = std::max(m.pixel_footprint, angle_between(reflect(l, *n), peak_dir));
        }
    }
    return m;
}

struct HighlightArea {
    std::size_t object = 0;
    int pixels = 0;
    double peak = 0.0;
};

/// Pixel area of the half-maximum specular highlight on every glossy object.
///
/// The scene is re-rendered with its diffuse, ambient, reflection and emission
/// terms removed so only the specular lobes remain; each object's threshold
/// is half of its own peak.
inline std::vector<HighlightArea> highlight_pixel_areas(const Scene& scene, const RenderOptions& options,
                                                        int workers = default_worker_count()) {
    Scene specular_only = scene;
    for (auto& o : specular_only.objects) {
        o.material.k_a = Color{};
        o.material.k_d = Color{};
        o.material.reflectivity = 0.0;
        o.material.emission = Color{};
    }
    specular_only.background = Color{};
    RenderOptions opts = options;
    opts.superposition = Superposition::linear_then_encode;
    const Framebuffer fb = render(specular_only, opts, workers);

    const Camera& cam = scene.camera;
    std::vector<int> owner(fb.size(), -1);
    std::vector<double> peaks(scene.objects.size(), 0.0);
    for (int y = 0; y < fb.height(); ++y) {
        for (int x = 0; x < fb.width(); ++x) {
            if (const auto h = nearest_hit(scene, cam.pixel_ray(x, y))) {
                owner[fb.index(x, y)] = static_cast<int>(h->object);
                peaks[h->object] = std::max(peaks[h->object], fb.at(x, y).mean());
            }
        }
    }
    std::vector<HighlightArea> areas;
    for (std::size_t i = 0; i < scene.objects.size(); ++i) {
        if (!(scene.objects[i].material.k_s.max_channel() > 0.0) || !(peaks[i] > 0.0)) continue;
        HighlightArea a{i, 0, peaks[i]};
        for (std::size_t p = 0; p < fb.size(); ++p) {
            if (owner[p] == static_cast<int>(i) && fb[p].mean() >= 0.5 * peaks[i]) ++a.pixels;
        }
        areas.push_back(a);
    }
    return areas;
}

}  // namespace shadelab::diagnostics
