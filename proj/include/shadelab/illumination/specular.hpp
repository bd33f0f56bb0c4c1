#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "shadelab/core/vec3.hpp"

namespace shadelab {

/// Which specular lobe to use.
///
/// Classic is the fixed-function Phong term, cut off where N.L <= 0.
/// Modified (Lewis) multiplies the lobe by the incident cosine, which makes it
/// continuous across the terminator; `normalized` additionally applies the
/// (m + 2) / (2 pi) energy normalization.
struct SpecularModel {
    enum class Kind { classic, modified };
    Kind kind = Kind::classic;
    bool normalized = false;

    static constexpr SpecularModel classic() { return {Kind::classic, false}; }
    static constexpr SpecularModel modified(bool normalized = false) { return {Kind::modified, normalized}; }

    friend constexpr bool operator==(const SpecularModel&, const SpecularModel&) = default;
};

/// Lambert cosine, clamped at the back side.
inline double lambert_term(const Vec3& n, const Vec3& l) { return std::max(dot(n, l), 0.0); }

/// Phong lobe max(R.V, 0)^m; zero outside the forward hemisphere of R.
inline double phong_lobe(double r_dot_v, double m) {
    return r_dot_v > 0.0 ? std::pow(r_dot_v, m) : 0.0;
}

/// Specular reflectance factor. L points to the light, V to the eye; all unit.
inline double phong_specular(SpecularModel model, const Vec3& n, const Vec3& l, const Vec3& v, double m) {
    if (!(m >= 0.0)) throw std::invalid_argument("shininess exponent must be non-negative");
    const double n_dot_l = dot(n, l);
    if (model.kind == SpecularModel::Kind::classic) {
        if (!(n_dot_l > 0.0)) return 0.0;
        return phong_lobe(dot(reflect(l, n), v), m);
    }
    const double cosine = std::max(n_dot_l, 0.0);
    if (cosine == 0.0) return 0.0;
    double value = phong_lobe(dot(reflect(l, n), v), m) * cosine;
    if (model.normalized) value *= (m + 2.0) / (2.0 * kPi);
    return value;
}

}  // namespace shadelab
