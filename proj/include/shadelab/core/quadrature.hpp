#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "shadelab/core/vec3.hpp"

namespace shadelab {

/// Layout of the deterministic hemisphere rule for a requested sample count.
struct QuadratureLayout {
    std::int64_t bands = 1;     // equal-area latitude bands (uniform in cos(theta))
    std::int64_t azimuths = 1;  // uniform azimuth cells per band

    static QuadratureLayout for_samples(std::int64_t n_samples) {
        if (n_samples < 1) throw std::invalid_argument("quadrature needs at least one sample");
        QuadratureLayout l;
        l.bands = std::max<std::int64_t>(1, std::llround(std::sqrt(static_cast<double>(n_samples) / 2.0)));
        l.azimuths = std::max<std::int64_t>(1, n_samples / l.bands);
        return l;
    }
    std::int64_t count() const { return bands * azimuths; }
};

/// Integral of f over the unit hemisphere around `normal` (solid-angle measure).
///
/// Midpoint rule on equal-area cells: cos(theta) is stratified uniformly over
/// `bands`, azimuth over `azimuths`, so every cell has solid angle 2*pi/count.
/// Fully deterministic; f receives unit directions in world space.
template <class F>
double hemisphere_quadrature(F&& f, const Vec3& normal, std::int64_t n_samples) {
    const QuadratureLayout layout = QuadratureLayout::for_samples(n_samples);
    const Frame frame = Frame::around(normalize(normal));
    const double inv_bands = 1.0 / static_cast<double>(layout.bands);
    const double dphi = 2.0 * kPi / static_cast<double>(layout.azimuths);

    double sum = 0.0;
    for (std::int64_t i = 0; i < layout.bands; ++i) {
        const double cos_theta = 1.0 - (static_cast<double>(i) + 0.5) * inv_bands;
        const double sin_theta = std::sqrt(std::max(0.0, 1.0 - cos_theta * cos_theta));
        double band = 0.0;
        for (std::int64_t j = 0; j < layout.azimuths; ++j) {
            const double phi = (static_cast<double>(j) + 0.5) * dphi;
            const Vec3 local{sin_theta * std::cos(phi), sin_theta * std::sin(phi), cos_theta};
            band += f(frame.to_world(local));
        }
        sum += band;
    }
    return sum * (2.0 * kPi / static_cast<double>(layout.count()));
}

}  // namespace shadelab
