#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <variant>

namespace shadelab {

/// Values are written to the device unchanged (what fixed-function CAD viewers do).
struct Identity {};

/// Pure display-gamma correction: encode(v) = v^(1/gamma).
struct PowerLaw {
    double gamma = 2.2;
};

/// IEC 61966-2-1 style curve: linear toe plus a 2.4 exponent segment.
struct SrgbPiecewise {
    // The published thresholds (0.0031308 / 0.04045) leave the two branches
    // 3e-8 apart. These are the branches' exact crossing point, which keeps the
    // curve continuous, monotone and exactly invertible.
    static constexpr double linear_limit = 0.0031306684425005686;
    static constexpr double encoded_limit = 12.92 * linear_limit;
};

using TransferFunction = std::variant<Identity, PowerLaw, SrgbPiecewise>;

inline void validate(const TransferFunction& tf) {
    if (const auto* p = std::get_if<PowerLaw>(&tf); p && !(p->gamma > 0.0 && std::isfinite(p->gamma))) {
        throw std::invalid_argument("power-law gamma must be positive");
    }
}

/// Linear radiance to device code in [0, 1]; input is clamped to [0, 1] first.
inline double encode(const TransferFunction& tf, double v) {
    if (v < 0.0 || std::isnan(v)) throw std::domain_error("cannot encode negative radiance");
    const double c = std::min(v, 1.0);
    return std::visit(
        [c](const auto& t) -> double {
            using T = std::decay_t<decltype(t)>;
            if constexpr (std::is_same_v<T, Identity>) {
                return c;
            } else if constexpr (std::is_same_v<T, PowerLaw>) {
                return std::pow(c, 1.0 / t.gamma);
            } else {
                return c <= SrgbPiecewise::linear_limit ? 12.92 * c : 1.055 * std::pow(c, 1.0 / 2.4) - 0.055;
            }
        },
        tf);
}

/// Inverse of encode on [0, 1].
inline double decode(const TransferFunction& tf, double e) {
    if (e < 0.0 || e > 1.0 || std::isnan(e)) throw std::domain_error("encoded value must lie in [0, 1]");
    return std::visit(
        [e](const auto& t) -> double {
            using T = std::decay_t<decltype(t)>;
            if constexpr (std::is_same_v<T, Identity>) {
                return e;
            } else if constexpr (std::is_same_v<T, PowerLaw>) {
                return std::pow(e, t.gamma);
            } else {
                return e <= SrgbPiecewise::encoded_limit ? e / 12.92 : std::pow((e + 0.055) / 1.055, 2.4);
            }
        },
        tf);
}

/// Luminance a display with the given gamma emits for an encoded value.
inline double displayed_luminance(double encoded, double display_gamma) {
    if (!(display_gamma > 0.0)) throw std::invalid_argument("display gamma must be positive");
    if (encoded < 0.0 || encoded > 1.0) throw std::domain_error("encoded value must lie in [0, 1]");
    return std::pow(encoded, display_gamma);
}

inline std::string describe(const TransferFunction& tf) {
    if (std::holds_alternative<Identity>(tf)) return "none";
    if (const auto* p = std::get_if<PowerLaw>(&tf)) return "gamma " + std::to_string(p->gamma);
    return "srgb";
}

}  // namespace shadelab
