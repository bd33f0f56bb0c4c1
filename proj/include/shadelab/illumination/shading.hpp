#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <span>

#include "shadelab/illumination/environment_map.hpp"
#include "shadelab/illumination/light.hpp"
#include "shadelab/illumination/material.hpp"
#include "shadelab/illumination/sky.hpp"
#include "shadelab/illumination/specular.hpp"

namespace shadelab {

/// Offset along the normal for secondary rays leaving a surface.
inline constexpr double kShadowBias = 1e-6;

struct ShadingContext {
    SpecularModel model = SpecularModel::classic();
    const EnvironmentMap* environment = nullptr;
    std::int64_t sky_samples = 256;
};

/// Where and how a surface is seen. All directions unit length; `to_eye`
/// points from the surface towards the viewer.
struct SurfaceSample {
    Vec3 point;
    Vec3 normal;
    Vec3 to_eye;
};

/// Occlusion policy that lets light pass through everything (the fixed-function default).
struct NoShadows {
    static constexpr bool casts_shadows = false;
    bool operator()(const Vec3&, const Vec3&, double) const { return false; }
};

/// Occlusion callables may advertise `static constexpr bool casts_shadows`;
/// anything without it is assumed to cast shadows.
template <class T>
inline constexpr bool casts_shadows_v = [] {
    if constexpr (requires { T::casts_shadows; }) {
        return T::casts_shadows;
    } else {
        return true;
    }
}();

/// Calls sink(Color) once per additive term of the local illumination sum:
/// one term per light in list order, then the environment reflection and
/// emission when present. `occluded(origin, dir, max_distance)` decides
/// shadowing; it is never consulted for headlights or ambient light.
template <class Occlusion, class Sink>
void for_each_contribution(const SurfaceSample& s, const Material& mat, std::span<const LightSource> lights,
                           const ShadingContext& ctx, Occlusion&& occluded, Sink&& sink) {
    const Vec3& n = s.normal;
    const Vec3& v = s.to_eye;
    const Vec3 origin = s.point + kShadowBias * n;

    auto direct = [&](const Vec3& l, const Color& intensity) {
        const double diffuse = lambert_term(n, l);
        const double specular = mat.k_s.max_channel() > 0.0
                                    ? phong_specular(ctx.model, n, l, v, mat.m_shiny)
                                    : 0.0;
        return intensity * (mat.k_d * diffuse + mat.k_s * specular);
    };

    for (const LightSource& light : lights) {
        std::visit(
            [&](const auto& li) {
                using T = std::decay_t<decltype(li)>;
                if constexpr (std::is_same_v<T, DirectionalLight>) {
                    const Vec3 l = li.to_light();
                    if (dot(n, l) > 0.0 && occluded(origin, l, std::numeric_limits<double>::infinity())) {
                        sink(Color{});
                    } else {
                        sink(direct(l, li.intensity));
                    }
                } else if constexpr (std::is_same_v<T, PointLight>) {
                    const Vec3 to_light = li.position - s.point;
                    const double dist = length(to_light);
                    const Vec3 l = to_light / dist;
                    const double scale = li.attenuation == Attenuation::inverse_square ? 1.0 / (dist * dist) : 1.0;
                    if (dot(n, l) > 0.0 && occluded(origin, l, dist)) {
                        sink(Color{});
                    } else {
                        sink(direct(l, li.intensity * scale));
                    }
                } else if constexpr (std::is_same_v<T, Headlight>) {
                    sink(direct(v, li.intensity));
                } else if constexpr (std::is_same_v<T, AmbientLight>) {
                    sink(mat.k_a * li.intensity);
                } else {
                    // Lambertian response to the sky dome: k_d * E / pi.
                    double e = 0.0;
                    if constexpr (casts_shadows_v<std::decay_t<Occlusion>>) {
                        e = sky_irradiance(
                            n, li, [&](const Vec3& w) { return occluded(origin, w, std::numeric_limits<double>::infinity()); },
                            ctx.sky_samples);
                    } else {
                        e = sky_irradiance(n, li, NeverOccluded{}, ctx.sky_samples);
                    }
                    sink(mat.k_d * (e / kPi));
                }
            },
            light);
    }
    if (ctx.environment != nullptr && mat.reflectivity > 0.0) {
        sink(mat.reflectivity * env_reflection(v, n, *ctx.environment));
    }
    if (mat.emission.max_channel() > 0.0) sink(mat.emission);
}

/// Linear (unclamped) radiance leaving the surface towards the eye.
template <class Occlusion = NoShadows>
Color shade_point(const SurfaceSample& s, const Material& mat, std::span<const LightSource> lights,
                  const ShadingContext& ctx, Occlusion&& occluded = {}) {
    Color total;
    for_each_contribution(s, mat, lights, ctx, occluded, [&total](const Color& c) { total += c; });
    return total;
}

}  // namespace shadelab
