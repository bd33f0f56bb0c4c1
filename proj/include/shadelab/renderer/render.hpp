#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "shadelab/core/framebuffer.hpp"
#include "shadelab/illumination/shading.hpp"
#include "shadelab/renderer/scene.hpp"

namespace shadelab {

struct SceneHit {
    Hit hit;
    std::size_t object = 0;
};

inline std::optional<SceneHit> nearest_hit(const Scene& scene, const Ray& ray) {
    std::optional<SceneHit> best;
    for (std::size_t i = 0; i < scene.objects.size(); ++i) {
        if (auto h = intersect(ray, scene.objects[i].patch); h && (!best || h->t < best->hit.t)) {
            best = SceneHit{*h, i};
        }
    }
    return best;
}

/// True when any surface lies on the ray strictly before `max_distance`.
inline bool any_hit(const Scene& scene, const Ray& ray, double max_distance) {
    for (const auto& o : scene.objects) {
        if (auto h = intersect(ray, o.patch); h && h->t < max_distance) return true;
    }
    return false;
}

/// Scene-backed occlusion for the shading layer.
struct SceneOcclusion {
    static constexpr bool casts_shadows = true;
    const Scene* scene;
    bool operator()(const Vec3& origin, const Vec3& dir, double max_distance) const {
        return any_hit(*scene, Ray{origin, dir}, max_distance);
    }
};

/// Whether `point` (on a surface) is shadowed from `light`. Rays run towards
/// directional lights and as segments towards point lights. Headlights,
/// ambient light and the sky never report occlusion here; the sky is
/// occluded per direction inside sky_irradiance instead.
inline bool shadow_query(const Vec3& point, const LightSource& light, const Scene& scene) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    if (const auto* d = std::get_if<DirectionalLight>(&light)) {
        const Vec3 l = d->to_light();
        return any_hit(scene, Ray{point + kShadowBias * l, l}, inf);
    }
    if (const auto* p = std::get_if<PointLight>(&light)) {
        const Vec3 to_light = p->position - point;
        const double dist = length(to_light);
        const Vec3 l = to_light / dist;
        return any_hit(scene, Ray{point + kShadowBias * l, l}, dist - kShadowBias);
    }
    return false;
}

/// Worker count from SHADELAB_THREADS, else the machine's parallelism.
inline int default_worker_count() {
    if (const char* env = std::getenv("SHADELAB_THREADS"); env != nullptr && *env != '\0') {
        try {
            const int n = std::stoi(env);
            if (n >= 1) return n;
        } catch (const std::exception&) {
        }
    }
    return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

namespace detail {

inline Color shade_hit(const Scene& scene, const RenderOptions& options, const Ray& ray, const SceneHit& sh) {
    const SceneObject& obj = scene.objects[sh.object];
    const SurfaceSample sample{sh.hit.point, sh.hit.normal, -ray.direction};
    ShadingContext ctx;
    ctx.model = options.specular_model;
    ctx.environment = scene.environment ? &*scene.environment : nullptr;
    ctx.sky_samples = options.sky_samples;

    Color total;
    auto accumulate = [&](const Color& term) {
        if (options.superposition == Superposition::naive_encoded_sum) {
            const Color c = clamp01(term);
            total += Color{encode(options.output_tf, c.r), encode(options.output_tf, c.g),
                           encode(options.output_tf, c.b)};
        } else {
            total += term;
        }
    };
    if (options.shadows == Shadows::on) {
        for_each_contribution(sample, obj.material, scene.lights, ctx, SceneOcclusion{&scene}, accumulate);
    } else {
        for_each_contribution(sample, obj.material, scene.lights, ctx, NoShadows{}, accumulate);
    }
    return total;
}

}  // namespace detail

inline constexpr int kTileRows = 8;

/// Ray casts the scene into a linear framebuffer, one primary ray per pixel.
///
/// Rows are split into tiles handed out to `workers` threads; each pixel is a
/// pure function of the scene, so the output does not depend on the worker
/// count. Throws std::invalid_argument for an invalid scene or camera.
inline Framebuffer render(const Scene& scene, const RenderOptions& options, int workers = default_worker_count()) {
    scene.validate();
    validate(options.output_tf);
    if (options.sky_samples < 1) throw std::invalid_argument("sky sample count must be positive");

    const Camera& cam = scene.camera;
    Framebuffer fb(cam.width_px, cam.height_px);
    const int tiles = (cam.height_px + kTileRows - 1) / kTileRows;
    std::atomic<int> next_tile{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto work = [&] {
        try {
            for (int tile = next_tile++; tile < tiles; tile = next_tile++) {
                const int y_end = std::min(cam.height_px, (tile + 1) * kTileRows);
                for (int y = tile * kTileRows; y < y_end; ++y) {
                    for (int x = 0; x < cam.width_px; ++x) {
                        const Ray ray = cam.pixel_ray(x, y);
                        const auto hit = nearest_hit(scene, ray);
                        fb.set(x, y, hit ? detail::shade_hit(scene, options, ray, *hit) : scene.background);
                    }
                }
            }
        } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            next_tile = tiles;
        }
    };

    const int n = std::clamp(workers, 1, tiles);
    if (n == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) pool.emplace_back(work);
    }
    if (failure) std::rethrow_exception(failure);
    return fb;
}

}  // namespace shadelab
