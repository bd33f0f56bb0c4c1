#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "shadelab/core/framebuffer.hpp"
#include "shadelab/renderer/render.hpp"

namespace shadelab::diagnostics {

struct OverflowStats {
    double fraction = 0.0;
    double max_value = 0.0;
    double plateau_gradient = 0.0;
};

/// Share of pixels that clipped, the largest pre-clamp value, and the largest
/// channel difference of the clamped image between neighbouring clipped
/// pixels (0 means the clipped region is perfectly flat).
inline OverflowStats overflow_stats(const Framebuffer& fb) {
    OverflowStats s;
    std::size_t count = 0;
    for (int y = 0; y < fb.height(); ++y) {
        for (int x = 0; x < fb.width(); ++x) {
            s.max_value = std::max(s.max_value, fb.at(x, y).max_channel());
            if (!fb.overflowed(x, y)) continue;
            ++count;
            const Color c = clamp01(fb.at(x, y));
            for (const auto& [nx, ny] : {std::pair{x + 1, y}, std::pair{x, y + 1}}) {
                if (nx >= fb.width() || ny >= fb.height() || !fb.overflowed(nx, ny)) continue;
                const Color d = clamp01(fb.at(nx, ny));
                for (int ch = 0; ch < 3; ++ch) s.plateau_gradient = std::max(s.plateau_gradient, std::abs(c[ch] - d[ch]));
            }
        }
    }
    s.fraction = static_cast<double>(count) / static_cast<double>(fb.size());
    return s;
}

struct ImageDifference {
    double max_abs = 0.0;
    double mean_abs = 0.0;
};

/// Channelwise |a - b| statistics. Throws on a size mismatch.
inline ImageDifference image_difference(const Framebuffer& a, const Framebuffer& b) {
    if (a.width() != b.width() || a.height() != b.height()) {
        throw std::invalid_argument("images differ in size");
    }
    ImageDifference d;
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (int ch = 0; ch < 3; ++ch) {
            const double e = std::abs(a[i][ch] - b[i][ch]);
            d.max_abs = std::max(d.max_abs, e);
            sum += e;
        }
    }
    d.mean_abs = sum / (3.0 * static_cast<double>(a.size()));
    return d;
}

struct ShadowContrast {
    double inner_mean = 0.0;  // ground luminance close to the contact point
    double ring_mean = 0.0;   // ground luminance further out
    double ratio = 1.0;
    int darkened_pixels = 0;
    int components = 0;       // 4-connected components of darkened pixels near the contact point
};

/// Ground darkening beneath an object, the signature of a cast shadow.
///
/// Ground pixels (those whose primary ray first hits `ground_object`) are
/// split by their distance to `contact`: closer than `inner_radius`, or in the
/// ring [ring_inner, ring_outer]. Pixels in the inner zone darker than
/// `threshold` times the ring mean count as shadow; `components` tells whether
/// they form one connected region.
inline ShadowContrast cast_shadow_contrast(const Framebuffer& fb, const Scene& scene, std::size_t ground_object,
                                           const Vec3& contact, double inner_radius, double ring_inner,
                                           double ring_outer, double threshold = 0.8) {
    const Camera& cam = scene.camera;
    if (fb.width() != cam.width_px || fb.height() != cam.height_px) {
        throw std::invalid_argument("framebuffer does not match the scene camera");
    }
    std::vector<signed char> zone(fb.size(), 0);  // 1 inner, 2 ring
    double inner_sum = 0.0;
    double ring_sum = 0.0;
    int inner_n = 0;
    int ring_n = 0;
    for (int y = 0; y < fb.height(); ++y) {
        for (int x = 0; x < fb.width(); ++x) {
            const auto h = nearest_hit(scene, cam.pixel_ray(x, y));
            if (!h || h->object != ground_object) continue;
            const double dist = length(h->hit.point - contact);
            const double v = fb.at(x, y).mean();
            if (dist < inner_radius) {
                zone[fb.index(x, y)] = 1;
                inner_sum += v;
                ++inner_n;
            } else if (dist >= ring_inner && dist <= ring_outer) {
                zone[fb.index(x, y)] = 2;
                ring_sum += v;
                ++ring_n;
            }
        }
    }
    if (inner_n == 0 || ring_n == 0) throw std::runtime_error("ground zones are not visible from the camera");
    ShadowContrast s;
    s.inner_mean = inner_sum / inner_n;
    s.ring_mean = ring_sum / ring_n;
    s.ratio = s.ring_mean > 0.0 ? s.inner_mean / s.ring_mean : 1.0;

    const double limit = threshold * s.ring_mean;
    std::vector<char> dark(fb.size(), 0);
    for (std::size_t i = 0; i < fb.size(); ++i) {
        if (zone[i] == 1 && fb[i].mean() < limit) {
            dark[i] = 1;
            ++s.darkened_pixels;
        }
    }
    std::vector<std::size_t> stack;
    for (std::size_t start = 0; start < fb.size(); ++start) {
        if (dark[start] != 1) continue;
        ++s.components;
        dark[start] = 2;
        stack.push_back(start);
        while (!stack.empty()) {
            const std::size_t i = stack.back();
            stack.pop_back();
            const int x = static_cast<int>(i % fb.width());
            const int y = static_cast<int>(i / fb.width());
            for (const auto& [nx, ny] : {std::pair{x + 1, y}, std::pair{x - 1, y}, std::pair{x, y + 1}, std::pair{x, y - 1}}) {
                if (nx < 0 || ny < 0 || nx >= fb.width() || ny >= fb.height()) continue;
                const std::size_t j = fb.index(nx, ny);
                if (dark[j] == 1) {
                    dark[j] = 2;
                    stack.push_back(j);
                }
            }
        }
    }
    return s;
}

}  // namespace shadelab::diagnostics
