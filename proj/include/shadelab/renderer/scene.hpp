#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "shadelab/core/camera.hpp"
#include "shadelab/core/geometry.hpp"
#include "shadelab/core/transfer.hpp"
#include "shadelab/illumination/environment_map.hpp"
#include "shadelab/illumination/light.hpp"
#include "shadelab/illumination/material.hpp"
#include "shadelab/illumination/specular.hpp"

namespace shadelab {

struct SceneObject {
    SurfacePatch patch;
    Material material;
};

struct Scene {
    std::vector<SceneObject> objects;
    std::vector<LightSource> lights;
    std::optional<EnvironmentMap> environment;
    Camera camera;
    Color background{};

    void validate() const {
        if (objects.empty()) throw std::invalid_argument("scene has no surfaces");
        camera.validate();
        for (const auto& o : objects) {
            shadelab::validate(o.patch);
            shadelab::validate(o.material);
        }
        for (const auto& l : lights) shadelab::validate(l);
        if (background.min_channel() < 0.0) throw std::invalid_argument("background must be non-negative");
    }
};

enum class Shadows { off, on };

/// How light contributions are combined before display.
///
/// linear_then_encode sums radiometrically and encodes once at output.
/// naive_encoded_sum emulates fixed-function CAD viewers: every term is
/// clamped and encoded on its own and the device values are added.
enum class Superposition { linear_then_encode, naive_encoded_sum };

struct RenderOptions {
    SpecularModel specular_model = SpecularModel::classic();
    Shadows shadows = Shadows::off;
    Superposition superposition = Superposition::linear_then_encode;
    TransferFunction output_tf = Identity{};
    std::int64_t sky_samples = 256;  // quadrature directions per shaded point
};

/// Transfer function to apply when writing a framebuffer rendered with these
/// options. Naive renders already hold device values.
inline TransferFunction display_transfer(const RenderOptions& options) {
    if (options.superposition == Superposition::naive_encoded_sum) return Identity{};
    return options.output_tf;
}

}  // namespace shadelab
