#pragma once

#include <cmath>
#include <stdexcept>

#include "shadelab/core/framebuffer.hpp"
#include "shadelab/core/transfer.hpp"

namespace shadelab::diagnostics {

/// Displayed luminance of two equal device values added together, relative
/// to the sum of each displayed on its own: 2^(gamma - 1). With gamma = 2 the
/// display shows 4 where each light alone shows 1.
inline double superposition_ratio(double encoded, double display_gamma) {
    if (!(encoded > 0.0)) throw std::invalid_argument("encoded value must be positive");
    if (2.0 * encoded > 1.0) throw std::invalid_argument("2v exceeds 1; the sum overflows the display");
    return displayed_luminance(2.0 * encoded, display_gamma) / (2.0 * displayed_luminance(encoded, display_gamma));
}

struct SuperpositionMeasurement {
    double ratio = 0.0;
    std::size_t pixel = 0;
    double first = 0.0;   // device value of the first light alone
    double second = 0.0;  // device value of the second light alone
    double both = 0.0;
};

/// Image-path measurement on three naive renders of identical geometry: one
/// light, the other light, and both together. Uses the brightest pixel lit by
/// both lights (largest min of the two single-light values) whose combined
/// value still fits the display.
inline SuperpositionMeasurement measure_superposition(const Framebuffer& first, const Framebuffer& second,
                                                      const Framebuffer& both, double display_gamma) {
    if (first.width() != second.width() || first.width() != both.width() || first.height() != second.height() ||
        first.height() != both.height()) {
        throw std::invalid_argument("superposition panels differ in size");
    }
    SuperpositionMeasurement m;
    double best = 0.0;
    for (std::size_t i = 0; i < first.size(); ++i) {
        const double a = first[i].mean();
        const double b = second[i].mean();
        const double ab = both[i].mean();
        if (ab > 1.0 || a > 1.0 || b > 1.0) continue;
        const double score = std::min(a, b);
        if (score > best) {
            best = score;
            m.pixel = i;
            m.first = a;
            m.second = b;
            m.both = ab;
        }
    }
    if (!(best > 0.0)) throw std::runtime_error("no pixel is lit by both lights");
    m.ratio = displayed_luminance(m.both, display_gamma) /
              (displayed_luminance(m.first, display_gamma) + displayed_luminance(m.second, display_gamma));
    return m;
}

}  // namespace shadelab::diagnostics
