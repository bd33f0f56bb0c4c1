#pragma once

#include <fstream>
#include <istream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "shadelab/renderer/scene.hpp"

namespace shadelab::cli {

/// Line-oriented scene description; see README for the grammar. '#' starts a
/// comment. Errors name the offending line.
class SceneFileError : public std::runtime_error {
public:
    SceneFileError(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

namespace detail {

class LineReader {
public:
    LineReader(std::istringstream& in, int line) : in_(in), line_(line) {}

    double number() {
        std::string tok = word();
        try {
            std::size_t used = 0;
            const double v = std::stod(tok, &used);
            if (used != tok.size()) throw std::invalid_argument(tok);
            return v;
        } catch (const std::logic_error&) {
            throw SceneFileError(line_, "expected a number, got '" + tok + "'");
        }
    }

    int integer() {
        const double v = number();
        if (v != static_cast<int>(v)) throw SceneFileError(line_, "expected an integer");
        return static_cast<int>(v);
    }

    Vec3 vec() {
        const double x = number();
        const double y = number();
        const double z = number();
        return {x, y, z};
    }

    std::string word() {
        std::string tok;
        if (!(in_ >> tok)) throw SceneFileError(line_, "unexpected end of line");
        return tok;
    }

    bool optional_word(std::string& tok) { return static_cast<bool>(in_ >> tok); }

    void finish() {
        std::string extra;
        if (in_ >> extra) throw SceneFileError(line_, "unexpected token '" + extra + "'");
    }

private:
    std::istringstream& in_;
    int line_;
};

}  // namespace detail

inline Scene parse_scene(std::istream& in) {
    Scene scene;
    std::map<std::string, Material> materials{{"default", Material::matte(0.8)}};
    bool have_camera = false;
    std::string raw;
    int line_no = 0;

    while (std::getline(in, raw)) {
        ++line_no;
        if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        std::istringstream line(raw);
        std::string keyword;
        if (!(line >> keyword)) continue;
        detail::LineReader r(line, line_no);

        auto material_ref = [&]() -> Material {
            std::string name;
            if (!r.optional_word(name)) return materials.at("default");
            const auto it = materials.find(name);
            if (it == materials.end()) throw SceneFileError(line_no, "unknown material '" + name + "'");
            return it->second;
        };

        try {
            if (keyword == "camera") {
                const std::string kind = r.word();
                Camera c;
                if (kind == "ortho") {
                    c.kind = Projection::orthographic;
                } else if (kind == "persp") {
                    c.kind = Projection::perspective;
                } else {
                    throw SceneFileError(line_no, "camera kind must be ortho or persp");
                }
                c.position = r.vec();
                c.view_dir = r.vec();
                c.up = r.vec();
                c.width_px = r.integer();
                c.height_px = r.integer();
                c.fov_or_extent = r.number();
                c.validate();
                scene.camera = c;
                have_camera = true;
            } else if (keyword == "material") {
                const std::string name = r.word();
                Material m;
                m.k_a = Color::gray(r.number());
                m.k_d = Color::gray(r.number());
                m.k_s = Color::gray(r.number());
                m.m_shiny = r.number();
                std::string refl;
                if (r.optional_word(refl)) {
                    std::istringstream one(refl);
                    detail::LineReader rr(one, line_no);
                    m.reflectivity = rr.number();
                }
                validate(m);
                materials[name] = m;
            } else if (keyword == "sphere") {
                const Vec3 c = r.vec();
                const double radius = r.number();
                scene.objects.push_back({Sphere{c, radius}, material_ref()});
            } else if (keyword == "plane") {
                const Vec3 p = r.vec();
                const Vec3 n = r.vec();
                scene.objects.push_back({Plane{p, normalize(n), {}}, material_ref()});
            } else if (keyword == "cap") {
                PolarCap cap;
                cap.center = r.vec();
                cap.radius = r.number();
                cap.axis = normalize(r.vec());
                cap.max_polar_angle = radians(r.number());
                const std::string o = r.word();
                if (o == "bump") {
                    cap.orientation = CapOrientation::bump;
                } else if (o == "dent") {
                    cap.orientation = CapOrientation::dent;
                } else {
                    throw SceneFileError(line_no, "cap orientation must be bump or dent");
                }
                scene.objects.push_back({cap, material_ref()});
            } else if (keyword == "light") {
                const std::string kind = r.word();
                if (kind == "directional") {
                    const Vec3 d = normalize(r.vec());
                    scene.lights.emplace_back(DirectionalLight{d, Color::gray(r.number())});
                } else if (kind == "point") {
                    const Vec3 p = r.vec();
                    PointLight light{p, Color::gray(r.number()), Attenuation::none};
                    std::string att;
                    if (r.optional_word(att)) {
                        if (att == "inverse_square") {
                            light.attenuation = Attenuation::inverse_square;
                        } else if (att != "none") {
                            throw SceneFileError(line_no, "attenuation must be none or inverse_square");
                        }
                    }
                    scene.lights.emplace_back(light);
                } else if (kind == "headlight") {
                    scene.lights.emplace_back(Headlight{Color::gray(r.number())});
                } else if (kind == "ambient") {
                    scene.lights.emplace_back(AmbientLight{Color::gray(r.number())});
                } else if (kind == "sky") {
                    const double lz = r.number();
                    scene.lights.emplace_back(OvercastSky{lz, normalize(r.vec())});
                } else {
                    throw SceneFileError(line_no, "unknown light kind '" + kind + "'");
                }
            } else if (keyword == "background") {
                const double red = r.number();
                const double green = r.number();
                const double blue = r.number();
                scene.background = Color{red, green, blue};
            } else if (keyword == "envmap") {
                if (r.word() != "gradient") throw SceneFileError(line_no, "envmap supports only 'gradient'");
                const double top = r.number();
                const double bottom = r.number();
                scene.environment = EnvironmentMap::horizon_gradient(Color::gray(top), Color::gray(bottom));
            } else {
                throw SceneFileError(line_no, "unknown keyword '" + keyword + "'");
            }
            r.finish();
            if (keyword == "sphere" || keyword == "plane" || keyword == "cap") validate(scene.objects.back().patch);
            if (keyword == "light") validate(scene.lights.back());
        } catch (const SceneFileError&) {
            throw;
        } catch (const std::exception& e) {
            throw SceneFileError(line_no, e.what());
        }
    }
    if (!have_camera) throw SceneFileError(line_no, "scene has no camera");
    try {
        scene.validate();
    } catch (const std::exception& e) {
        throw SceneFileError(line_no, e.what());
    }
    return scene;
}

inline Scene parse_scene_text(const std::string& text) {
    std::istringstream in(text);
    return parse_scene(in);
}

inline Scene load_scene(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open scene file '" + path + "'");
    return parse_scene(in);
}

}  // namespace shadelab::cli
