#pragma once

#include <algorithm>
#include <cstdint>

#include "shadelab/core/quadrature.hpp"
#include "shadelab/illumination/light.hpp"

namespace shadelab {

/// Overcast luminance gradation L(theta) = L_z (1 + 2 cos theta) / 3 above the
/// horizon, zero below it. Zenith to horizon ratio is 3:1.
inline double sky_radiance(const Vec3& dir, const OvercastSky& sky) {
    const double cos_theta = dot(dir, normalize(sky.up));
    if (cos_theta < 0.0) return 0.0;
    return sky.zenith_radiance * (1.0 + 2.0 * cos_theta) / 3.0;
}

inline constexpr std::int64_t kDefaultSkySamples = 1'000'000;

struct NeverOccluded {
    bool operator()(const Vec3&) const { return false; }
};

/// Irradiance from the sky on a surface with the given normal. `occluded`
/// is consulted per quadrature direction and returns true when the sky is
/// blocked in that direction.
template <class Occluded = NeverOccluded>
double sky_irradiance(const Vec3& normal, const OvercastSky& sky, Occluded&& occluded = {},
                      std::int64_t n_samples = kDefaultSkySamples) {
    const Vec3 n = normalize(normal);
    return hemisphere_quadrature(
        [&](const Vec3& w) {
            const double radiance = sky_radiance(w, sky);
            if (radiance == 0.0) return 0.0;
            const double cosine = std::max(dot(w, n), 0.0);
            if (cosine == 0.0 || occluded(w)) return 0.0;
            return radiance * cosine;
        },
        n, n_samples);
}

}  // namespace shadelab
