#pragma once

#include <algorithm>

namespace shadelab {

/// Radiometrically linear RGB triple. Values are not clamped.
struct Color {
    double r = 0.0;
    double g = 0.0;
    double b = 0.0;

    constexpr Color() = default;
    constexpr Color(double r_, double g_, double b_) : r(r_), g(g_), b(b_) {}
    static constexpr Color gray(double v) { return {v, v, v}; }

    constexpr Color& operator+=(const Color& o) { r += o.r; g += o.g; b += o.b; return *this; }
    constexpr Color& operator*=(double s) { r *= s; g *= s; b *= s; return *this; }

    friend constexpr Color operator+(Color a, const Color& c) { return a += c; }
    friend constexpr Color operator-(const Color& a, const Color& c) { return {a.r - c.r, a.g - c.g, a.b - c.b}; }
    friend constexpr Color operator*(Color a, double s) { return a *= s; }
    friend constexpr Color operator*(double s, Color a) { return a *= s; }
    friend constexpr Color operator*(const Color& a, const Color& c) { return {a.r * c.r, a.g * c.g, a.b * c.b}; }
    friend constexpr bool operator==(const Color&, const Color&) = default;

    constexpr double max_channel() const { return std::max({r, g, b}); }
    constexpr double min_channel() const { return std::min({r, g, b}); }
    constexpr double mean() const { return (r + g + b) / 3.0; }
    constexpr double operator[](int i) const { return i == 0 ? r : (i == 1 ? g : b); }
};

constexpr Color clamp01(const Color& c) {
    return {std::clamp(c.r, 0.0, 1.0), std::clamp(c.g, 0.0, 1.0), std::clamp(c.b, 0.0, 1.0)};
}

}  // namespace shadelab
