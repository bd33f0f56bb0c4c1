#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "shadelab/illumination/specular.hpp"
#include "shadelab/renderer/scene.hpp"

namespace shadelab::diagnostics {

struct CutoffConfig {
    Vec3 to_light{0.0, 0.0, 1.0};
    Vec3 to_eye{0.0, 0.0, 1.0};
    double shininess = 10.0;
    double k_s = 1.0;
    SpecularModel model = SpecularModel::classic();
    int samples = 100'000;
    double epsilon = 1e-5;
};

struct CutoffResult {
    double max_jump = 0.0;
    Vec3 worst_normal;
};

namespace detail {

/// Scans the terminator great circle N.L = 0 of a unit sphere. `eye_at(N)`
/// gives the unit direction to the viewer at the point with normal N.
///
/// The specular term is evaluated with the normal tilted by +-epsilon and
/// +-epsilon/2 towards the light, and each one-sided limit is extrapolated
/// linearly to zero tilt (2 s(e/2) - s(e)). This removes the O(epsilon)
/// ramp that the modified model has next to the terminator, so a continuous
/// model reports ~0 and the classic model its true jump.
template <class EyeAt>
CutoffResult scan_terminator(const Vec3& to_light, double shininess, double k_s, SpecularModel model,
                             int samples, double epsilon, EyeAt&& eye_at) {
    if (samples < 1) throw std::invalid_argument("terminator scan needs at least one sample");
    if (!(epsilon > 0.0)) throw std::invalid_argument("perturbation must be positive");
    const Vec3 l = normalize(to_light);
    const Frame f = Frame::around(l);
    CutoffResult result;
    for (int i = 0; i < samples; ++i) {
        const double phi = 2.0 * kPi * i / samples;
        const Vec3 n0 = std::cos(phi) * f.tangent + std::sin(phi) * f.bitangent;
        const Vec3 v = eye_at(n0);
        auto spec = [&](double tilt) { return phong_specular(model, normalize(n0 + tilt * l), l, v, shininess); };
        const double lit = 2.0 * spec(0.5 * epsilon) - spec(epsilon);
        const double dark = 2.0 * spec(-0.5 * epsilon) - spec(-epsilon);
        const double jump = k_s * std::abs(lit - dark);
        if (jump > result.max_jump) {
            result.max_jump = jump;
            result.worst_normal = n0;
        }
    }
    return result;
}

}  // namespace detail

/// Largest specular discontinuity across the terminator of a sphere lit by a
/// directional light and seen from a fixed direction.
inline CutoffResult cutoff_discontinuity(const CutoffConfig& c) {
    const Vec3 v = normalize(c.to_eye);
    return detail::scan_terminator(c.to_light, c.shininess, c.k_s, c.model, c.samples, c.epsilon,
                                   [&v](const Vec3&) { return v; });
}

/// Same measurement for a scene made of one sphere and one directional light.
/// Perspective cameras use the per-point direction to the eye.
inline CutoffResult cutoff_discontinuity(const Scene& scene, SpecularModel model, int samples = 100'000,
                                         double epsilon = 1e-5) {
    const Sphere* sphere = nullptr;
    const Material* material = nullptr;
    for (const auto& o : scene.objects) {
        if (const auto* s = std::get_if<Sphere>(&o.patch)) {
            if (sphere) throw std::invalid_argument("cutoff scene must contain exactly one sphere");
            sphere = s;
            material = &o.material;
        }
    }
    if (!sphere) throw std::invalid_argument("cutoff scene must contain exactly one sphere");
    const DirectionalLight* light = nullptr;
    for (const auto& l : scene.lights) {
        if (const auto* d = std::get_if<DirectionalLight>(&l)) {
            if (light) throw std::invalid_argument("cutoff scene must contain exactly one directional light");
            light = d;
        }
    }
    if (!light) throw std::invalid_argument("cutoff scene must contain exactly one directional light");

    const Camera& cam = scene.camera;
    const double k_s = material->k_s.max_channel() * light->intensity.max_channel();
    if (cam.kind == Projection::orthographic) {
        const Vec3 v = -cam.forward();
        return detail::scan_terminator(light->to_light(), material->m_shiny, k_s, model, samples, epsilon,
                                       [&v](const Vec3&) { return v; });
    }
    return detail::scan_terminator(light->to_light(), material->m_shiny, k_s, model, samples, epsilon,
                                   [&](const Vec3& n) {
                                       return normalize(cam.position - (sphere->center + sphere->radius * n));
                                   });
}

}  // namespace shadelab::diagnostics
