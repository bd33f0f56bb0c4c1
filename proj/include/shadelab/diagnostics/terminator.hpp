#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "shadelab/core/framebuffer.hpp"
#include "shadelab/core/geometry.hpp"
#include "shadelab/core/transfer.hpp"

namespace shadelab::diagnostics {

struct TerminatorProfile {
    double confinement_angle = 0.0;  // largest polar angle from the light with a visible pixel value
    double max_gradient = 0.0;       // largest neighbour difference of encoded values near N.L = 0
    double pixel_footprint = 0.0;    // median normal rotation between neighbouring pixels near N.L = 0
    int lit_pixels = 0;
};

/// Band |N.L| < kTerminatorBand counts as "near the terminator".
inline constexpr double kTerminatorBand = 0.1;

/// Measures how far light reaches around a sphere and how hard the light
/// break is once the image is encoded with `tf`. A pixel is visible when its
/// encoded value exceeds one 8-bit step (1/255). Throws if the sphere is not
/// in view.
inline TerminatorProfile terminator_profile(const Framebuffer& fb, const Camera& camera, const Sphere& sphere,
                                            const Vec3& to_light, const TransferFunction& tf) {
    if (fb.width() != camera.width_px || fb.height() != camera.height_px) {
        throw std::invalid_argument("framebuffer does not match the camera");
    }
    const Vec3 l = normalize(to_light);
    std::vector<std::optional<Vec3>> normals(fb.size());
    std::vector<double> encoded(fb.size(), 0.0);
    bool found = false;
    TerminatorProfile p;
    for (int y = 0; y < fb.height(); ++y) {
        for (int x = 0; x < fb.width(); ++x) {
            const auto hit = intersect(camera.pixel_ray(x, y), SurfacePatch{sphere});
            if (!hit) continue;
            found = true;
            const std::size_t i = fb.index(x, y);
            normals[i] = hit->normal;
            encoded[i] = encode(tf, fb[i].mean());
            if (encoded[i] > 1.0 / 255.0) {
                ++p.lit_pixels;
                p.confinement_angle = std::max(p.confinement_angle, angle_between(hit->normal, l));
            }
        }
    }
    if (!found) throw std::runtime_error("sphere not found in the image");

    std::vector<double> steps;
    for (int y = 0; y < fb.height(); ++y) {
        for (int x = 0; x < fb.width(); ++x) {
            const auto& n = normals[fb.index(x, y)];
            if (!n) continue;
            for (const auto& [nx, ny] : {std::pair{x + 1, y}, std::pair{x, y + 1}}) {
                if (nx >= fb.width() || ny >= fb.height()) continue;
                const auto& m = normals[fb.index(nx, ny)];
                if (!m) continue;
                if (std::abs(dot(*n, l)) >= kTerminatorBand && std::abs(dot(*m, l)) >= kTerminatorBand) continue;
                p.max_gradient = std::max(p.max_gradient, std::abs(encoded[fb.index(x, y)] - encoded[fb.index(nx, ny)]));
                steps.push_back(angle_between(*n, *m));
            }
        }
    }
    if (!steps.empty()) {
        auto mid = steps.begin() + static_cast<std::ptrdiff_t>(steps.size() / 2);
        std::nth_element(steps.begin(), mid, steps.end());
        p.pixel_footprint = *mid;
    }
    return p;
}

}  // namespace shadelab::diagnostics
