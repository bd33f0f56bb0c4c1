#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "shadelab/core/framebuffer.hpp"
#include "shadelab/renderer/render.hpp"

namespace shadelab::figures {

enum class FigureId {
    fig1a, fig1b, fig1c, fig1d, fig1e,
    fig2a, fig2b, fig2c, fig2d, fig2e,
    fig5_pair, fig6_pair, fig7,
};

inline constexpr std::array<FigureId, 13> kAllFigures = {
    FigureId::fig1a, FigureId::fig1b, FigureId::fig1c, FigureId::fig1d, FigureId::fig1e,
    FigureId::fig2a, FigureId::fig2b, FigureId::fig2c, FigureId::fig2d, FigureId::fig2e,
    FigureId::fig5_pair, FigureId::fig6_pair, FigureId::fig7,
};

inline std::string_view to_string(FigureId id) {
    static constexpr std::array<std::string_view, 13> names = {
        "fig1a", "fig1b", "fig1c", "fig1d", "fig1e", "fig2a", "fig2b",
        "fig2c", "fig2d", "fig2e", "fig5_pair", "fig6_pair", "fig7"};
    return names[static_cast<std::size_t>(id)];
}

inline std::optional<FigureId> parse_figure_id(std::string_view token) {
    for (FigureId id : kAllFigures)
        if (to_string(id) == token) return id;
    return std::nullopt;
}

/// Free parameters of the builders.
struct FigureParams {
    int resolution = 512;            // square panels, resolution x resolution
    double ambient = 0.2;            // ambient level of the "b" variants
    std::int64_t sky_samples = 256;  // sky quadrature directions per shaded point
};

/// One deterministic render job. Most figures have a single panel; fig6 is
/// three balls side by side, each panel lit by its own light set.
struct FigureSpec {
    FigureId id = FigureId::fig1a;
    std::string variant;
    std::vector<Scene> panels;
    RenderOptions options;

    std::string file_stem() const {
        return variant.empty() ? std::string(to_string(id)) : std::string(to_string(id)) + "_" + variant;
    }
};

// Layout constants shared with the diagnostics and tests.
inline constexpr std::size_t kBallObject = 0;    // fig1: the ball
inline constexpr std::size_t kGroundObject = 1;  // fig1: the floor
inline const Vec3 kBallContact{0.0, -1.0, 0.0};  // fig1: where the ball touches the floor
inline constexpr double kCapRadius = 0.4;
inline constexpr double kCapSpacing = 1.0;
inline constexpr double kCapPolarAngleDeg = 80.0;
inline constexpr double kDisplayGamma = 2.2;

/// Variants produced for a figure; an empty string denotes the single image.
inline std::vector<std::string> variants(FigureId id) {
    switch (id) {
        case FigureId::fig2a:
        case FigureId::fig2b:
        case FigureId::fig2c:
        case FigureId::fig2d:
        case FigureId::fig2e:
            return {"bump", "dent", "mixed", "tilt"};
        case FigureId::fig5_pair:
        case FigureId::fig6_pair:
            return {"naive", "corrected"};
        default:
            return {""};
    }
}

namespace detail {

inline Vec3 unit(double x, double y, double z) { return normalize(Vec3{x, y, z}); }

/// Key light "from above left", expressed in the camera frame.
inline const Vec3 kKeyLight = unit(1.0, -1.0, -1.0);

/// Light set of variant a..e; `view_axis` points from the scene to the camera.
inline std::vector<LightSource> variant_lights(char letter, const Vec3& view_axis, const Vec3& sky_up,
                                               const FigureParams& params) {
    switch (letter) {
        case 'a':
            return {Headlight{Color::gray(1.0)}};
        case 'b':
            return {DirectionalLight{kKeyLight, Color::gray(1.0)}, AmbientLight{Color::gray(params.ambient)}};
        case 'c':
            return {Headlight{Color::gray(0.5)}, DirectionalLight{kKeyLight, Color::gray(0.35)},
                    DirectionalLight{unit(-1.0, -0.5, -1.0), Color::gray(0.35)}};
        case 'd': {
            // Eight front lights on a 45 degree cone around the view axis.
            std::vector<LightSource> lights;
            const Frame f = Frame::around(view_axis);
            const double s = std::sin(kPi / 4.0);
            const double c = std::cos(kPi / 4.0);
            for (int k = 0; k < 8; ++k) {
                const double phi = 2.0 * kPi * k / 8.0;
                const Vec3 to_light = f.to_world(Vec3{s * std::cos(phi), s * std::sin(phi), c});
                lights.emplace_back(DirectionalLight{-to_light, Color::gray(0.18)});
            }
            return lights;
        }
        case 'e':
            return {OvercastSky{1.0, sky_up}};
        default:
            throw std::invalid_argument("unknown lighting variant");
    }
}

inline EnvironmentMap reflection_map() {
    return EnvironmentMap::horizon_gradient(Color::gray(0.9), Color::gray(0.1));
}

inline Scene ball_scene(char letter, const FigureParams& params) {
    Scene s;
    Material clay = Material::matte(0.8, 0.8);
    if (letter == 'c') clay.reflectivity = 0.25;
    s.objects.push_back({Sphere{{0.0, 0.0, 0.0}, 1.0}, clay});
    s.objects.push_back({Plane{kBallContact, {0.0, 1.0, 0.0}, {}}, Material::matte(0.8, 0.8)});
    s.camera = Camera{Projection::perspective, {0.0, 2.0, 6.5}, {0.0, -2.4, -6.5}, {0.0, 1.0, 0.0},
                      params.resolution, params.resolution, 40.0};
    s.lights = variant_lights(letter, -s.camera.forward(), {0.0, 1.0, 0.0}, params);
    if (letter == 'c') s.environment = reflection_map();
    if (letter == 'e') s.background = Color::gray(0.8);
    return s;
}

/// 4x2 plate of polar caps. `layout` is bump, dent or mixed (checkerboard).
inline Scene plate_scene(char letter, std::string_view layout, bool tilted, const FigureParams& params) {
    Scene s;
    Material clay = Material::matte(0.8, 0.8);
    if (letter == 'c') clay.reflectivity = 0.25;
    const double polar = radians(kCapPolarAngleDeg);
    const double depth = kCapRadius * std::cos(polar);

    Plane plate{{0.0, 0.0, 0.0}, {0.0, 0.0, 1.0}, {}};
    std::vector<SceneObject> caps;
    for (int row = 0; row < 2; ++row) {
        for (int col = 0; col < 4; ++col) {
            const double x = (col - 1.5) * kCapSpacing;
            const double y = (0.5 - row) * kCapSpacing;
            bool dent = layout == "dent";
            if (layout == "mixed") dent = (row + col) % 2 == 1;
            const PolarCap cap{{x, y, -depth}, kCapRadius, {0.0, 0.0, 1.0}, polar,
                               dent ? CapOrientation::dent : CapOrientation::bump};
            plate.cutouts.push_back({cap.base_center(), cap.rim_radius()});
            caps.push_back({cap, clay});
        }
    }
    s.objects.push_back({plate, clay});
    for (auto& c : caps) s.objects.push_back(std::move(c));

    if (tilted) {
        const double tilt = radians(15.0);
        const Vec3 eye{0.0, -6.0 * std::sin(tilt), 6.0 * std::cos(tilt)};
        s.camera = Camera{Projection::perspective, eye, -eye, {0.0, 1.0, 0.0}, params.resolution, params.resolution, 40.0};
    } else {
        s.camera = Camera{Projection::orthographic, {0.0, 0.0, 5.0}, {0.0, 0.0, -1.0}, {0.0, 1.0, 0.0},
                          params.resolution, params.resolution, 4.2};
    }
    s.lights = variant_lights(letter, {0.0, 0.0, 1.0}, {0.0, 0.0, 1.0}, params);
    if (letter == 'c') s.environment = reflection_map();
    return s;
}

inline Camera portrait_camera(const FigureParams& params) {
    return Camera{Projection::orthographic, {0.0, 0.0, 5.0}, {0.0, 0.0, -1.0}, {0.0, 1.0, 0.0},
                  params.resolution, params.resolution, 2.2};
}

inline Scene matte_ball(std::vector<LightSource> lights, const FigureParams& params) {
    Scene s;
    Material white = Material::matte(1.0);
    s.objects.push_back({Sphere{{0.0, 0.0, 0.0}, 1.0}, white});
    s.camera = portrait_camera(params);
    s.lights = std::move(lights);
    return s;
}

}  // namespace detail

/// Light of the fig5 pair (direction of travel).
inline const Vec3 kFig5Light = -detail::unit(-1.0, 0.6, 0.5);
/// fig6: light from the left and from the right (directions of travel).
inline const Vec3 kFig6LeftLight = -detail::unit(-1.0, 0.35, 0.6);
inline const Vec3 kFig6RightLight = -detail::unit(1.0, 0.35, 0.6);
inline constexpr double kFig6Intensity = 0.5;

// fig7 geometry.
inline const Vec3 kFig7LightPos{-2.2, 1.6, 2.2};
inline constexpr double kFig7SymbolRadius = 0.3;
inline const Vec3 kFig7NearCenter{-1.4, 0.0, 0.0};
inline const Vec3 kFig7FarCenter{1.4, 0.0, 0.0};
inline const Vec3 kFig7Eye{0.0, 0.5, 9.0};
inline constexpr std::size_t kFig7NearObject = 0;
inline constexpr std::size_t kFig7FarObject = 1;

/// Point on the near fig7 ball where the light mirrors into the eye.
inline Vec3 fig7_mirror_point() {
    Vec3 n = normalize(kFig7LightPos - kFig7NearCenter);
    for (int i = 0; i < 100; ++i) {
        const Vec3 p = kFig7NearCenter + n;
        n = normalize(normalize(kFig7LightPos - p) + normalize(kFig7Eye - p));
    }
    return kFig7NearCenter + n;
}

/// Shininess for which the near ball's half-maximum lobe half-angle equals
/// the angular radius of the light marker seen from the mirror point.
inline double fig7_shininess() {
    const double dist = length(kFig7LightPos - fig7_mirror_point());
    const double beta = std::asin(kFig7SymbolRadius / dist);
    return std::log(0.5) / std::log(std::cos(beta));
}

/// Builds the scene(s) and options for a figure variant. An empty variant
/// selects the figure's first variant. Throws std::invalid_argument for a
/// variant the figure does not have.
inline FigureSpec build(FigureId id, std::string_view variant = {}, const FigureParams& params = {}) {
    const auto names = variants(id);
    if (variant.empty()) variant = names.front();
    if (std::find(names.begin(), names.end(), variant) == names.end()) {
        throw std::invalid_argument("figure " + std::string(to_string(id)) + " has no variant '" +
                                    std::string(variant) + "'");
    }
    FigureSpec spec;
    spec.id = id;
    spec.variant = std::string(variant);
    spec.options.sky_samples = params.sky_samples;

    const std::string_view name = to_string(id);
    if (name.starts_with("fig1")) {
        const char letter = name.back();
        spec.panels.push_back(detail::ball_scene(letter, params));
        spec.options.shadows = letter == 'e' ? Shadows::on : Shadows::off;
        return spec;
    }
    if (name.starts_with("fig2")) {
        const char letter = name.back();
        const bool tilted = variant == "tilt";
        spec.panels.push_back(detail::plate_scene(letter, tilted ? "mixed" : variant, tilted, params));
        spec.options.shadows = letter == 'e' ? Shadows::on : Shadows::off;
        return spec;
    }

    const bool naive = variant == "naive";
    if (naive) {
        spec.options.output_tf = Identity{};
    } else {
        spec.options.output_tf = PowerLaw{kDisplayGamma};
    }
    switch (id) {
        case FigureId::fig5_pair:
            spec.panels.push_back(detail::matte_ball({DirectionalLight{kFig5Light, Color::gray(1.0)}}, params));
            break;
        case FigureId::fig6_pair: {
            const DirectionalLight left{kFig6LeftLight, Color::gray(kFig6Intensity)};
            const DirectionalLight right{kFig6RightLight, Color::gray(kFig6Intensity)};
            spec.panels.push_back(detail::matte_ball({left}, params));
            spec.panels.push_back(detail::matte_ball({right}, params));
            spec.panels.push_back(detail::matte_ball({left, right}, params));
            spec.options.superposition = naive ? Superposition::naive_encoded_sum : Superposition::linear_then_encode;
            break;
        }
        case FigureId::fig7: {
            spec.options.output_tf = Identity{};
            Scene s;
            const Material glossy = Material::glossy(0.2, 0.8, fig7_shininess());
            s.objects.push_back({Sphere{kFig7NearCenter, 1.0}, glossy});
            s.objects.push_back({Sphere{kFig7FarCenter, 1.0}, glossy});
            Material marker = Material::matte(0.0);
            marker.emission = Color::gray(1.0);
            s.objects.push_back({Sphere{kFig7LightPos, kFig7SymbolRadius}, marker});
            s.lights = {PointLight{kFig7LightPos, Color::gray(1.0), Attenuation::none}};
            s.camera = Camera{Projection::perspective, kFig7Eye, Vec3{0.0, 0.0, 0.0} - kFig7Eye, {0.0, 1.0, 0.0},
                              params.resolution, params.resolution, 35.0};
            spec.panels.push_back(std::move(s));
            break;
        }
        default:
            throw std::invalid_argument("unhandled figure id");
    }
    return spec;
}

inline std::vector<FigureSpec> build_all_variants(FigureId id, const FigureParams& params = {}) {
    std::vector<FigureSpec> out;
    for (const auto& v : variants(id)) out.push_back(build(id, v, params));
    return out;
}

struct FigureRender {
    std::vector<Framebuffer> panels;
    Framebuffer image;  // panels side by side
};

inline FigureRender render_figure(const FigureSpec& spec, int workers = default_worker_count()) {
    FigureRender r;
    for (const Scene& s : spec.panels) r.panels.push_back(render(s, spec.options, workers));
    r.image = r.panels.size() == 1 ? r.panels.front() : concat_horizontal(r.panels);
    return r;
}

}  // namespace shadelab::figures
