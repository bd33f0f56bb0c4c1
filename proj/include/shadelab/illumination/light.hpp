#pragma once

#include <stdexcept>
#include <string>
#include <variant>

#include "shadelab/core/color.hpp"
#include "shadelab/core/vec3.hpp"

namespace shadelab {

/// Collimated light. `direction` is the direction the light travels.
struct DirectionalLight {
    Vec3 direction{0.0, 0.0, -1.0};
    Color intensity = Color::gray(1.0);

    Vec3 to_light() const { return -normalize(direction); }
};

enum class Attenuation { none, inverse_square };

struct PointLight {
    Vec3 position;
    Color intensity = Color::gray(1.0);
    Attenuation attenuation = Attenuation::none;
};

/// Light at the eye: shades every point with L = V.
struct Headlight {
    Color intensity = Color::gray(1.0);
};

struct AmbientLight {
    Color intensity = Color::gray(0.2);
};

/// Overcast sky dome, brightest at the zenith.
struct OvercastSky {
    double zenith_radiance = 1.0;
    Vec3 up{0.0, 1.0, 0.0};
};

using LightSource = std::variant<DirectionalLight, PointLight, Headlight, AmbientLight, OvercastSky>;

inline void validate(const LightSource& light) {
    std::visit(
        [](const auto& l) {
            using T = std::decay_t<decltype(l)>;
            if constexpr (std::is_same_v<T, OvercastSky>) {
                if (!(l.zenith_radiance > 0.0)) throw std::invalid_argument("sky zenith radiance must be positive");
                if (!(length(l.up) > 0.0)) throw std::invalid_argument("sky up vector is zero");
            } else {
                if (l.intensity.min_channel() < 0.0) throw std::invalid_argument("light intensity must be non-negative");
                if constexpr (std::is_same_v<T, DirectionalLight>) {
                    if (!(length(l.direction) > 0.0)) throw std::invalid_argument("light direction is zero");
                }
            }
        },
        light);
}

inline std::string kind_name(const LightSource& light) {
    static constexpr const char* names[] = {"directional", "point", "headlight", "ambient", "sky"};
    return names[light.index()];
}

}  // namespace shadelab
