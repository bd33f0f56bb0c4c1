#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "shadelab/core/color.hpp"
#include "shadelab/core/vec3.hpp"

namespace shadelab {

/// Latitude-longitude radiance map. Row 0 is the +Y pole, the last row the
/// -Y pole; column 0 starts at azimuth -pi measured from -Z towards +X.
class EnvironmentMap {
public:
    EnvironmentMap(int width, int height, std::vector<Color> texels)
        : width_(width), height_(height), texels_(std::move(texels)) {
        if (width < 1 || height < 1) throw std::invalid_argument("environment map must be at least 1x1");
        if (texels_.size() != static_cast<std::size_t>(width) * height) {
            throw std::invalid_argument("environment map texel count does not match its size");
        }
    }

    static EnvironmentMap constant(const Color& c) { return {1, 1, {c}}; }

    /// Vertical gradient from `top` (first row) to `bottom` (last row).
    static EnvironmentMap horizon_gradient(const Color& top, const Color& bottom, int width = 64, int height = 32) {
        std::vector<Color> texels;
        texels.reserve(static_cast<std::size_t>(width) * height);
        for (int y = 0; y < height; ++y) {
            const double s = height > 1 ? static_cast<double>(y) / (height - 1) : 0.0;
            const Color c = (1.0 - s) * top + s * bottom;
            for (int x = 0; x < width; ++x) texels.push_back(c);
        }
        return {width, height, std::move(texels)};
    }

    int width() const { return width_; }
    int height() const { return height_; }
    const Color& texel(int x, int y) const { return texels_[static_cast<std::size_t>(y) * width_ + x]; }

    /// Texel coordinates of a unit direction; total over the sphere.
    std::pair<int, int> texel_of(const Vec3& dir) const {
        const double theta = std::acos(std::clamp(dir.y, -1.0, 1.0));
        const double u = std::atan2(dir.x, -dir.z) / (2.0 * kPi) + 0.5;
        const int x = std::clamp(static_cast<int>(std::floor(u * width_)), 0, width_ - 1);
        const int y = std::clamp(static_cast<int>(std::floor(theta / kPi * height_)), 0, height_ - 1);
        return {x, y};
    }

    const Color& lookup(const Vec3& dir) const {
        const auto [x, y] = texel_of(dir);
        return texel(x, y);
    }

private:
    int width_;
    int height_;
    std::vector<Color> texels_;
};

/// Nearest-texel lookup along the mirror direction of V about N.
inline Color env_reflection(const Vec3& v, const Vec3& n, const EnvironmentMap& map) {
    return map.lookup(reflect(v, n));
}

}  // namespace shadelab
