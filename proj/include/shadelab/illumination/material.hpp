#pragma once

#include <stdexcept>

#include "shadelab/core/color.hpp"

namespace shadelab {

/// Fixed-function Phong material.
struct Material {
    Color k_a = Color::gray(0.0);
    Color k_d = Color::gray(0.8);
    Color k_s = Color::gray(0.0);
    double m_shiny = 1.0;
    double reflectivity = 0.0;  // environment-map mix weight
    Color emission{};           // self-luminous term, used for light markers

    static Material matte(double kd, double ka = 0.0) {
        Material m;
        m.k_a = Color::gray(ka);
        m.k_d = Color::gray(kd);
        return m;
    }
    static Material glossy(double kd, double ks, double shininess) {
        Material m;
        m.k_d = Color::gray(kd);
        m.k_s = Color::gray(ks);
        m.m_shiny = shininess;
        return m;
    }
};

/// OpenGL stores the shininess exponent in 7 bits.
enum class ShininessLimit { unlimited, seven_bit };

inline constexpr double kSevenBitShininessMax = 127.0;

inline void validate(const Material& m, ShininessLimit limit = ShininessLimit::unlimited) {
    for (const Color* c : {&m.k_a, &m.k_d, &m.k_s, &m.emission}) {
        if (c->min_channel() < 0.0) throw std::invalid_argument("material coefficients must be non-negative");
    }
    if (m.k_a.max_channel() > 1.0 || m.k_d.max_channel() > 1.0 || m.k_s.max_channel() > 1.0) {
        throw std::invalid_argument("material coefficients must not exceed 1");
    }
    if (!(m.m_shiny >= 0.0)) throw std::invalid_argument("shininess exponent must be non-negative");
    if (limit == ShininessLimit::seven_bit && m.m_shiny > kSevenBitShininessMax) {
        throw std::invalid_argument("shininess exponent exceeds the 7-bit limit of 127");
    }
    if (!(m.reflectivity >= 0.0 && m.reflectivity <= 1.0)) {
        throw std::invalid_argument("reflectivity must lie in [0, 1]");
    }
}

}  // namespace shadelab
