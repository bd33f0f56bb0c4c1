#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "shadelab/core/color.hpp"

namespace shadelab {

/// Linear, unclamped RGB image. Row 0 is the top of the picture.
class Framebuffer {
public:
    Framebuffer() = default;
    Framebuffer(int width, int height, Color fill = {})
        : width_(width), height_(height) {
        if (width < 1 || height < 1) throw std::invalid_argument("framebuffer must be at least 1x1");
        pixels_.assign(static_cast<std::size_t>(width) * height, Color{});
        overflow_.assign(pixels_.size(), 0);
        for (std::size_t i = 0; i < pixels_.size(); ++i) store(i, fill);
    }

    int width() const { return width_; }
    int height() const { return height_; }
    std::size_t size() const { return pixels_.size(); }

    const Color& at(int x, int y) const { return pixels_[index(x, y)]; }
    const Color& operator[](std::size_t i) const { return pixels_[i]; }

    /// Stores a pixel and updates its overflow flag. Distinct pixels may be
    /// written from different threads.
    void set(int x, int y, const Color& c) { store(index(x, y), c); }

    /// True when any channel exceeded 1 before clamping.
    bool overflowed(int x, int y) const { return overflow_[index(x, y)] != 0; }
    bool overflowed(std::size_t i) const { return overflow_[i] != 0; }

    const std::vector<Color>& pixels() const { return pixels_; }

    std::size_t index(int x, int y) const {
        return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x);
    }

    friend bool operator==(const Framebuffer& a, const Framebuffer& b) {
        return a.width_ == b.width_ && a.height_ == b.height_ && a.pixels_ == b.pixels_;
    }

private:
    void store(std::size_t i, const Color& c) {
        if (c.min_channel() < 0.0) throw std::domain_error("framebuffer values must be non-negative");
        pixels_[i] = c;
        overflow_[i] = c.max_channel() > 1.0 ? 1 : 0;
    }

    int width_ = 0;
    int height_ = 0;
    std::vector<Color> pixels_;
    std::vector<std::uint8_t> overflow_;
};

/// Places frames side by side (all must share the same height).
inline Framebuffer concat_horizontal(const std::vector<Framebuffer>& frames) {
    if (frames.empty()) throw std::invalid_argument("nothing to concatenate");
    int width = 0;
    const int height = frames.front().height();
    for (const auto& f : frames) {
        if (f.height() != height) throw std::invalid_argument("panel heights differ");
        width += f.width();
    }
    Framebuffer out(width, height);
    int x0 = 0;
    for (const auto& f : frames) {
        for (int y = 0; y < height; ++y)
            for (int x = 0; x < f.width(); ++x) out.set(x0 + x, y, f.at(x, y));
        x0 += f.width();
    }
    return out;
}

}  // namespace shadelab
