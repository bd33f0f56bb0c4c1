#pragma once

#include <cstdint>
#include <stdexcept>

#include "shadelab/core/quadrature.hpp"
#include "shadelab/illumination/specular.hpp"

namespace shadelab::diagnostics {

/// Integrand used for "how much light does the lobe return".
///
/// unweighted integrates the bare lobe (cos alpha)^m over the hemisphere,
/// cosine_weighted also multiplies by the outgoing cosine.
enum class EnergyConvention { unweighted, cosine_weighted };

/// Hemispherical integral of the classic Phong lobe at normal incidence, i.e.
/// reflected over received energy for a unit specular coefficient. Values
/// above 1 mean the material reflects more light than it receives.
inline double energy_ratio(double shininess, EnergyConvention convention,
                           std::int64_t n_samples = 1'000'000) {
    if (!(shininess >= 0.0)) throw std::invalid_argument("shininess exponent must be non-negative");
    const Vec3 n{0.0, 0.0, 1.0};
    const Vec3 l = n;
    return hemisphere_quadrature(
        [&](const Vec3& out) {
            const double lobe = phong_specular(SpecularModel::classic(), n, l, out, shininess);
            return convention == EnergyConvention::cosine_weighted ? lobe * dot(n, out) : lobe;
        },
        n, n_samples);
}

}  // namespace shadelab::diagnostics
