#include <gtest/gtest.h>

#include <vector>

#include "shadelab/illumination/environment_map.hpp"
#include "shadelab/illumination/shading.hpp"
#include "shadelab/illumination/sky.hpp"
#include "shadelab/illumination/specular.hpp"
#include "support/oracles.hpp"

namespace sl = shadelab;

namespace {

sl::Vec3 to_vec(oracle::V v) { return {v.x, v.y, v.z}; }

// Vertical-wall irradiance under the overcast sky, frozen from the polar-grid
// oracle in SkyIrradiance.VerticalSurfaceMatchesOracle (closed form pi/6 + 4/9).
constexpr double kVerticalSkyIrradiance = 0.96804;

/// Builds unit N, L, V with N.L = nl and R.V = rv.
struct Config {
    sl::Vec3 n, l, v;
};

Config mirror_config(double nl, double rv) {
    const sl::Vec3 n{0, 0, 1};
    const double s = std::sqrt(1.0 - nl * nl);
    const sl::Vec3 l{s, 0, nl};
    const sl::Vec3 r = sl::reflect(l, n);
    // V at angle acos(rv) from R, rotated about the y axis towards +x.
    const double a = std::acos(rv);
    const sl::Vec3 perp = sl::normalize(sl::cross(r, {0, 1, 0}));
    return {n, l, sl::normalize(std::cos(a) * r + std::sin(a) * perp)};
}

}  // namespace

// ---- lambert / phong ----

TEST(Lambert, Examples) {
    const sl::Vec3 n{0, 0, 1};
    EXPECT_DOUBLE_EQ(sl::lambert_term(n, n), 1.0);
    EXPECT_DOUBLE_EQ(sl::lambert_term(n, sl::normalize({0.995, 0, -0.1})), 0.0);
    EXPECT_NEAR(sl::lambert_term(n, {std::sin(sl::radians(60.0)), 0, 0.5}), 0.5, 1e-15);
}

TEST(PhongSpecular, MirrorConfigurationPeaks) {
    const sl::Vec3 n = sl::normalize({0.2, 0.1, 1});
    const sl::Vec3 l = sl::normalize({0.5, -0.3, 1});
    const sl::Vec3 v = sl::reflect(l, n);
    for (double m : {1.0, 10.0, 127.0, 5000.0}) {
        EXPECT_NEAR(sl::phong_specular(sl::SpecularModel::classic(), n, l, v, m), 1.0, 1e-9);
    }
}

TEST(PhongSpecular, ClassicJumpsAtTerminatorModifiedDoesNot) {
    const double eps = 1e-9;
    const Config lit = mirror_config(eps, 0.8);
    const double above = sl::phong_specular(sl::SpecularModel::classic(), lit.n, lit.l, lit.v, 10.0);
    EXPECT_NEAR(above, std::pow(0.8, 10.0), 1e-7);
    EXPECT_NEAR(above, 0.1073741824, 1e-7);
    const Config dark = mirror_config(-eps, 0.8);
    EXPECT_EQ(sl::phong_specular(sl::SpecularModel::classic(), dark.n, dark.l, dark.v, 10.0), 0.0);
    EXPECT_NEAR(sl::phong_specular(sl::SpecularModel::modified(), lit.n, lit.l, lit.v, 10.0), 0.0, 1e-8);
    EXPECT_EQ(sl::phong_specular(sl::SpecularModel::modified(), dark.n, dark.l, dark.v, 10.0), 0.0);
}

TEST(PhongSpecular, RejectsNegativeExponent) {
    const sl::Vec3 n{0, 0, 1};
    EXPECT_THROW(sl::phong_specular(sl::SpecularModel::classic(), n, n, n, -1.0), std::invalid_argument);
}

TEST(PhongSpecularProperty, AgreesWithTextbookFormulas) {
    oracle::Gen gen(11);
    for (int i = 0; i < 2000; ++i) {
        const oracle::V n = gen.direction();
        const oracle::V l = gen.direction();
        const oracle::V v = gen.direction();
        const double m = gen.uniform(0.0, 200.0);
        EXPECT_NEAR(sl::phong_specular(sl::SpecularModel::classic(), to_vec(n), to_vec(l), to_vec(v), m),
                    oracle::classic_phong(n, l, v, m), 1e-12);
        EXPECT_NEAR(sl::phong_specular(sl::SpecularModel::modified(), to_vec(n), to_vec(l), to_vec(v), m),
                    oracle::modified_phong(n, l, v, m), 1e-12);
        EXPECT_NEAR(sl::phong_specular(sl::SpecularModel::modified(true), to_vec(n), to_vec(l), to_vec(v), m),
                    oracle::modified_phong(n, l, v, m) * (m + 2.0) / (2.0 * oracle::kPi), 1e-12);
    }
}

// One-sided limits across N.L = 0 differ by max(R.V, 0)^m at the terminator
// for Classic and vanish for Modified.
TEST(PhongSpecularProperty, OneSidedLimitsAcrossTerminator) {
    oracle::Gen gen(12);
    const double eps = 1e-6;
    for (int i = 0; i < 500; ++i) {
        const sl::Vec3 l = to_vec(gen.direction());
        const sl::Vec3 v = to_vec(gen.direction());
        const sl::Frame f = sl::Frame::around(l);
        const double phi = gen.uniform(0.0, 2.0 * sl::kPi);
        const sl::Vec3 n0 = std::cos(phi) * f.tangent + std::sin(phi) * f.bitangent;
        const double m = gen.uniform(1.0, 50.0);
        const double expected = std::pow(std::max(sl::dot(sl::reflect(l, n0), v), 0.0), m);
        const sl::Vec3 up = sl::normalize(n0 + eps * l);
        const sl::Vec3 down = sl::normalize(n0 - eps * l);
        const double jump = sl::phong_specular(sl::SpecularModel::classic(), up, l, v, m) -
                            sl::phong_specular(sl::SpecularModel::classic(), down, l, v, m);
        EXPECT_NEAR(jump, expected, 2e-4 * m + 1e-9);
        EXPECT_LE(sl::phong_specular(sl::SpecularModel::modified(), up, l, v, m), 1e-6);
        EXPECT_EQ(sl::phong_specular(sl::SpecularModel::modified(), down, l, v, m), 0.0);
    }
}

TEST(PhongSpecularProperty, ModifiedNeverExceedsClassic) {
    oracle::Gen gen(13);
    for (int i = 0; i < 5000; ++i) {
        const sl::Vec3 n = to_vec(gen.direction());
        const sl::Vec3 l = to_vec(gen.direction());
        const sl::Vec3 v = to_vec(gen.direction());
        const double m = gen.uniform(0.0, 100.0);
        EXPECT_LE(sl::phong_specular(sl::SpecularModel::modified(), n, l, v, m),
                  sl::phong_specular(sl::SpecularModel::classic(), n, l, v, m));
    }
}

// ---- sky ----

TEST(SkyRadiance, ZenithHorizonAndBelow) {
    const sl::OvercastSky sky{2.0, {0, 1, 0}};
    EXPECT_DOUBLE_EQ(sl::sky_radiance({0, 1, 0}, sky), 2.0);
    EXPECT_NEAR(sl::sky_radiance({1, 0, 0}, sky), 2.0 / 3.0, 1e-15);
    EXPECT_DOUBLE_EQ(sl::sky_radiance(sl::normalize({1, -0.1, 0}), sky), 0.0);
}

TEST(SkyRadianceProperty, RotationInvariantAboutUp) {
    oracle::Gen gen(21);
    const sl::Vec3 up = sl::normalize({0.2, 1.0, -0.3});
    const sl::OvercastSky sky{1.0, up};
    const sl::Frame f = sl::Frame::around(up);
    for (int i = 0; i < 500; ++i) {
        const sl::Vec3 local = to_vec(gen.direction());
        const double a = gen.uniform(0.0, 2.0 * sl::kPi);
        const sl::Vec3 rotated{std::cos(a) * local.x - std::sin(a) * local.y,
                               std::sin(a) * local.x + std::cos(a) * local.y, local.z};
        EXPECT_NEAR(sl::sky_radiance(f.to_world(local), sky), sl::sky_radiance(f.to_world(rotated), sky), 1e-12);
    }
}

TEST(SkyIrradiance, HorizontalSurface) {
    const sl::OvercastSky sky{1.0, {0, 1, 0}};
    const double q = sl::sky_irradiance({0, 1, 0}, sky);
    const double closed = 7.0 * sl::kPi / 9.0;
    const double polar = oracle::polar_integral([](double c, double) { return (1.0 + 2.0 * c) / 3.0 * c; });
    EXPECT_NEAR(polar, closed, closed * 1e-6);
    EXPECT_NEAR(q, closed, closed * 5e-3);
    EXPECT_NEAR(q, polar, polar * 5e-3);
    EXPECT_NEAR(sl::sky_irradiance({0, 1, 0}, sl::OvercastSky{3.0, {0, 1, 0}}), 3.0 * q, 1e-9);
}

TEST(SkyIrradiance, FacingTheGroundSeesNothing) {
    const sl::OvercastSky sky{1.0, {0, 1, 0}};
    EXPECT_EQ(sl::sky_irradiance({0, -1, 0}, sky, sl::NeverOccluded{}, 10'000), 0.0);
}

TEST(SkyIrradiance, VerticalSurfaceMatchesOracle) {
    const sl::OvercastSky sky{1.0, {0, 1, 0}};
    // Oracle: wall normal +Z in oracle coordinates, sky up = +X; integrate over the wall's hemisphere.
    const double polar = oracle::polar_integral(
        [](double c, double phi) {
            const double s = std::sqrt(1.0 - c * c);
            const double cos_up = s * std::cos(phi);
            return cos_up < 0.0 ? 0.0 : (1.0 + 2.0 * cos_up) / 3.0 * c;
        },
        2000, 2000);
    EXPECT_NEAR(polar, sl::kPi / 6.0 + 4.0 / 9.0, 1e-5);
    EXPECT_NEAR(polar, kVerticalSkyIrradiance, 1e-5);
    const double q = sl::sky_irradiance({1, 0, 0}, sky);
    EXPECT_GT(q, 0.0);
    EXPECT_LT(q, 7.0 * sl::kPi / 9.0);
    EXPECT_NEAR(q, kVerticalSkyIrradiance, kVerticalSkyIrradiance * 5e-3);
}

TEST(SkyIrradiance, FullOcclusionBlocksEverything) {
    const sl::OvercastSky sky{1.0, {0, 1, 0}};
    EXPECT_EQ(sl::sky_irradiance({0, 1, 0}, sky, [](const sl::Vec3&) { return true; }, 4096), 0.0);
}

// ---- environment map ----

TEST(EnvironmentMap, ConstantMapReturnsItsColour) {
    const auto map = sl::EnvironmentMap::constant({0.1, 0.2, 0.3});
    oracle::Gen gen(31);
    for (int i = 0; i < 100; ++i) {
        const sl::Vec3 v = to_vec(gen.direction());
        const sl::Vec3 n = to_vec(gen.direction());
        const sl::Color c = sl::env_reflection(v, n, map);
        EXPECT_EQ(c.r, 0.1);
        EXPECT_EQ(c.g, 0.2);
        EXPECT_EQ(c.b, 0.3);
    }
}

TEST(EnvironmentMap, RetroreflectionLooksUpTheNormal) {
    const auto map = sl::EnvironmentMap::horizon_gradient(sl::Color::gray(0.9), sl::Color::gray(0.1));
    oracle::Gen gen(32);
    for (int i = 0; i < 100; ++i) {
        const sl::Vec3 n = to_vec(gen.direction());
        const sl::Color a = sl::env_reflection(n, n, map);
        const sl::Color b = map.lookup(n);
        EXPECT_EQ(a.r, b.r);
    }
}

TEST(EnvironmentMap, UpLooksUpTopTexel) {
    const auto map = sl::EnvironmentMap::horizon_gradient(sl::Color::gray(0.9), sl::Color::gray(0.1));
    const sl::Color c = sl::env_reflection({0, 1, 0}, {0, 1, 0}, map);
    EXPECT_EQ(c.r, map.texel(0, 0).r);
    EXPECT_GT(c.r, map.lookup({0, -1, 0}).r);
    EXPECT_NEAR(c.r, 0.9, 0.9 / map.height());
}

// ---- shade_point ----

TEST(ShadePoint, AmbientOnlyIsFlat) {
    sl::Material m;
    m.k_a = sl::Color::gray(1.0);
    m.k_d = sl::Color::gray(0.0);
    const std::vector<sl::LightSource> lights{sl::AmbientLight{sl::Color::gray(0.37)}};
    oracle::Gen gen(41);
    for (int i = 0; i < 100; ++i) {
        const sl::SurfaceSample s{{0, 0, 0}, to_vec(gen.direction()), to_vec(gen.direction())};
        EXPECT_EQ(sl::shade_point(s, m, lights, {}).r, 0.37);
    }
}

TEST(ShadePoint, TwoIdenticalLightsDoubleTheValue) {
    const sl::Material m = sl::Material::glossy(0.6, 0.4, 20.0);
    const sl::DirectionalLight d{sl::normalize({-0.3, -1, -0.5}), sl::Color::gray(0.7)};
    const std::vector<sl::LightSource> one{d};
    const std::vector<sl::LightSource> two{d, d};
    oracle::Gen gen(42);
    for (int i = 0; i < 200; ++i) {
        const sl::SurfaceSample s{{0, 0, 0}, to_vec(gen.direction()), to_vec(gen.direction())};
        EXPECT_EQ(sl::shade_point(s, m, two, {}).g, 2.0 * sl::shade_point(s, m, one, {}).g);
    }
}

TEST(ShadePointProperty, AdditiveOverRandomLightSplits) {
    oracle::Gen gen(43);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<sl::LightSource> all;
        const int count = 2 + trial % 5;
        for (int k = 0; k < count; ++k) {
            switch (k % 4) {
                case 0:
                    all.emplace_back(sl::DirectionalLight{to_vec(gen.direction()), sl::Color::gray(gen.uniform(0, 1))});
                    break;
                case 1:
                    all.emplace_back(sl::PointLight{sl::Vec3{0, 0, 0} + 3.0 * to_vec(gen.direction()),
                                                    sl::Color::gray(gen.uniform(0, 1)), sl::Attenuation::inverse_square});
                    break;
                case 2:
                    all.emplace_back(sl::Headlight{sl::Color::gray(gen.uniform(0, 1))});
                    break;
                default:
                    all.emplace_back(sl::AmbientLight{sl::Color::gray(gen.uniform(0, 1))});
            }
        }
        std::vector<sl::LightSource> a;
        std::vector<sl::LightSource> b;
        for (const auto& l : all) (gen.uniform(0, 1) < 0.5 ? a : b).push_back(l);
        sl::Material m = sl::Material::glossy(0.5, 0.5, gen.uniform(1, 60));
        m.k_a = sl::Color::gray(0.3);
        const sl::SurfaceSample s{{0.1, 0.2, 0.3}, to_vec(gen.direction()), to_vec(gen.direction())};
        const double whole = sl::shade_point(s, m, all, {}).r;
        const double parts = sl::shade_point(s, m, a, {}).r + sl::shade_point(s, m, b, {}).r;
        EXPECT_NEAR(whole, parts, 1e-12);
    }
}

TEST(ShadePoint, EnvironmentAndEmissionTermsAdd) {
    sl::Material m = sl::Material::matte(0.0);
    m.reflectivity = 0.5;
    m.emission = sl::Color::gray(0.25);
    const auto map = sl::EnvironmentMap::constant(sl::Color::gray(0.4));
    sl::ShadingContext ctx;
    ctx.environment = &map;
    const sl::SurfaceSample s{{0, 0, 0}, {0, 0, 1}, {0, 0, 1}};
    EXPECT_DOUBLE_EQ(sl::shade_point(s, m, {}, ctx).r, 0.5 * 0.4 + 0.25);
}

TEST(ShadePoint, SkyShadesDiffuseByIrradianceOverPi) {
    const sl::Material m = sl::Material::matte(0.8);
    const sl::OvercastSky sky{1.0, {0, 1, 0}};
    const std::vector<sl::LightSource> lights{sky};
    sl::ShadingContext ctx;
    ctx.sky_samples = 20'000;
    const sl::SurfaceSample s{{0, 0, 0}, {0, 1, 0}, {0, 1, 0}};
    EXPECT_NEAR(sl::shade_point(s, m, lights, ctx).r, 0.8 * sl::sky_irradiance({0, 1, 0}, sky, sl::NeverOccluded{}, 20'000) / sl::kPi,
                1e-12);
}

TEST(Material, SevenBitLimit) {
    EXPECT_NO_THROW(sl::validate(sl::Material::glossy(0.5, 0.5, 127.0), sl::ShininessLimit::seven_bit));
    EXPECT_THROW(sl::validate(sl::Material::glossy(0.5, 0.5, 128.0), sl::ShininessLimit::seven_bit),
                 std::invalid_argument);
    EXPECT_NO_THROW(sl::validate(sl::Material::glossy(0.5, 0.5, 5000.0)));
}

TEST(Light, ValidationAndNames) {
    EXPECT_THROW(sl::validate(sl::LightSource{sl::DirectionalLight{{0, 0, 0}, sl::Color::gray(1)}}), std::invalid_argument);
    EXPECT_THROW(sl::validate(sl::LightSource{sl::OvercastSky{0.0, {0, 1, 0}}}), std::invalid_argument);
    EXPECT_EQ(sl::kind_name(sl::Headlight{}), "headlight");
    EXPECT_EQ(sl::kind_name(sl::OvercastSky{}), "sky");
}
