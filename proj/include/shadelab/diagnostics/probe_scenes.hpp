#pragma once

#include <vector>

#include "shadelab/renderer/scene.hpp"

namespace shadelab::diagnostics {

/// Unit sphere at the origin filling an orthographic view along -Z.
inline Scene sphere_probe(const Material& material, std::vector<LightSource> lights, int resolution = 512) {
    Scene s;
    s.objects.push_back({Sphere{{0.0, 0.0, 0.0}, 1.0}, material});
    s.lights = std::move(lights);
    s.camera = Camera{Projection::orthographic, {0.0, 0.0, 5.0}, {0.0, 0.0, -1.0}, {0.0, 1.0, 0.0},
                      resolution, resolution, 2.2};
    return s;
}

inline const Sphere kProbeSphere{{0.0, 0.0, 0.0}, 1.0};

/// Highlight-size probe: pure specular sphere lit along the view axis.
inline Scene highlight_probe(double shininess, int resolution = 512) {
    return sphere_probe(Material::glossy(0.0, 1.0, shininess),
                        {DirectionalLight{{0.0, 0.0, -1.0}, Color::gray(1.0)}}, resolution);
}

/// Two nearly aligned lights whose specular highlights overlap; with
/// intensity 1 and k_s = 1 the overlap exceeds the displayable range.
inline Scene overflow_probe(double intensity, double shininess = 10.0, int resolution = 512) {
    const DirectionalLight a{-normalize(Vec3{0.1, 0.1, 1.0}), Color::gray(intensity)};
    const DirectionalLight b{-normalize(Vec3{-0.1, 0.0, 1.0}), Color::gray(intensity)};
    return sphere_probe(Material::glossy(0.0, 1.0, shininess), {a, b}, resolution);
}

}  // namespace shadelab::diagnostics
