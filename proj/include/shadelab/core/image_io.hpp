#pragma once

#include <bit>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "shadelab/core/framebuffer.hpp"
#include "shadelab/core/transfer.hpp"

namespace shadelab {

class ImageIoError : public std::runtime_error {
public:
    ImageIoError(const std::filesystem::path& path, const std::string& what)
        : std::runtime_error(path.string() + ": " + what) {}
};

/// 8-bit device code for one linear channel value.
inline std::uint8_t quantize(const TransferFunction& tf, double v) {
    return static_cast<std::uint8_t>(std::lround(encode(tf, v) * 255.0));
}

/// Binary PPM (P6, maxval 255) bytes for the encoded image.
inline std::string encode_ppm(const Framebuffer& fb, const TransferFunction& tf) {
    std::string out = "P6\n" + std::to_string(fb.width()) + " " + std::to_string(fb.height()) + "\n255\n";
    out.reserve(out.size() + fb.size() * 3);
    for (const Color& c : fb.pixels()) {
        out.push_back(static_cast<char>(quantize(tf, c.r)));
        out.push_back(static_cast<char>(quantize(tf, c.g)));
        out.push_back(static_cast<char>(quantize(tf, c.b)));
    }
    return out;
}

/// Little-endian colour PFM (scale -1.0), rows stored bottom to top.
inline std::string encode_pfm(const Framebuffer& fb) {
    std::string out = "PF\n" + std::to_string(fb.width()) + " " + std::to_string(fb.height()) + "\n-1.0\n";
    out.reserve(out.size() + fb.size() * 12);
    auto put = [&out](double v) {
        const auto bits = std::bit_cast<std::uint32_t>(static_cast<float>(v));
        for (int k = 0; k < 4; ++k) out.push_back(static_cast<char>((bits >> (8 * k)) & 0xffu));
    };
    for (int y = fb.height() - 1; y >= 0; --y) {
        for (int x = 0; x < fb.width(); ++x) {
            const Color& c = fb.at(x, y);
            put(c.r);
            put(c.g);
            put(c.b);
        }
    }
    return out;
}

namespace detail {

inline void write_bytes(const std::filesystem::path& path, const std::string& bytes) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw ImageIoError(path, "cannot open for writing");
    os.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!os) throw ImageIoError(path, "write failed");
}

inline std::string read_bytes(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw ImageIoError(path, "cannot open for reading");
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

/// Parses the whitespace-separated header tokens of a netpbm-style file.
inline std::vector<std::string> header_tokens(const std::string& bytes, int count, std::size_t& offset,
                                              const std::filesystem::path& path) {
    std::vector<std::string> tokens;
    std::size_t i = 0;
    while (static_cast<int>(tokens.size()) < count) {
        while (i < bytes.size() && std::isspace(static_cast<unsigned char>(bytes[i]))) ++i;
        if (i < bytes.size() && bytes[i] == '#') {
            while (i < bytes.size() && bytes[i] != '\n') ++i;
            continue;
        }
        const std::size_t start = i;
        while (i < bytes.size() && !std::isspace(static_cast<unsigned char>(bytes[i]))) ++i;
        if (start == i) throw ImageIoError(path, "truncated header");
        tokens.push_back(bytes.substr(start, i - start));
    }
    offset = i + 1;  // single whitespace byte after the last token
    return tokens;
}

}  // namespace detail

inline void write_image(const Framebuffer& fb, const TransferFunction& tf, const std::filesystem::path& path) {
    detail::write_bytes(path, encode_ppm(fb, tf));
}

inline void write_linear(const Framebuffer& fb, const std::filesystem::path& path) {
    detail::write_bytes(path, encode_pfm(fb));
}

/// 8-bit RGB raster from a P6 file.
struct Image8 {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> rgb;

    std::uint8_t at(int x, int y, int channel) const {
        return rgb[(static_cast<std::size_t>(y) * width + x) * 3 + channel];
    }
};

inline Image8 read_ppm(const std::filesystem::path& path) {
    const std::string bytes = detail::read_bytes(path);
    std::size_t offset = 0;
    const auto tok = detail::header_tokens(bytes, 4, offset, path);
    if (tok[0] != "P6") throw ImageIoError(path, "not a binary PPM");
    if (tok[3] != "255") throw ImageIoError(path, "only maxval 255 is supported");
    Image8 img{std::stoi(tok[1]), std::stoi(tok[2]), {}};
    const std::size_t n = static_cast<std::size_t>(img.width) * img.height * 3;
    if (bytes.size() < offset + n) throw ImageIoError(path, "truncated pixel data");
    img.rgb.assign(bytes.begin() + static_cast<std::ptrdiff_t>(offset),
                   bytes.begin() + static_cast<std::ptrdiff_t>(offset + n));
    return img;
}

/// Reads a colour PFM of either byte order back into a framebuffer.
inline Framebuffer read_pfm(const std::filesystem::path& path) {
    const std::string bytes = detail::read_bytes(path);
    std::size_t offset = 0;
    const auto tok = detail::header_tokens(bytes, 4, offset, path);
    if (tok[0] != "PF") throw ImageIoError(path, "not a colour PFM");
    const int w = std::stoi(tok[1]);
    const int h = std::stoi(tok[2]);
    const bool little = std::stod(tok[3]) < 0.0;
    const std::size_t n = static_cast<std::size_t>(w) * h * 3;
    if (bytes.size() < offset + n * 4) throw ImageIoError(path, "truncated pixel data");

    Framebuffer fb(w, h);
    std::size_t p = offset;
    auto next = [&]() {
        std::uint32_t bits = 0;
        for (int k = 0; k < 4; ++k) {
            const auto byte = static_cast<std::uint32_t>(static_cast<unsigned char>(bytes[p + k]));
            bits |= little ? byte << (8 * k) : byte << (8 * (3 - k));
        }
        p += 4;
        return static_cast<double>(std::bit_cast<float>(bits));
    };
    for (int y = h - 1; y >= 0; --y) {
        for (int x = 0; x < w; ++x) {
            const double r = next();
            const double g = next();
            const double b = next();
            fb.set(x, y, Color{r, g, b});
        }
    }
    return fb;
}

}  // namespace shadelab
