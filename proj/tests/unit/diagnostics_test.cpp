#include <gtest/gtest.h>

#include <json.hpp>

#include "shadelab/diagnostics/full_report.hpp"
#include "support/oracles.hpp"

namespace sl = shadelab;
namespace dg = shadelab::diagnostics;

namespace {

sl::Vec3 to_vec(oracle::V v) { return {v.x, v.y, v.z}; }

/// Reflected over received energy at normal incidence on the polar grid.
double energy_oracle(double m, bool cosine_weighted) {
    return oracle::polar_integral([&](double c, double) {
        // L = N; R = N, so R.V = cos(theta).
        return std::pow(c, m) * (cosine_weighted ? c : 1.0);
    });
}

}  // namespace

// ---- energy ----

TEST(EnergyRatio, FiveAndSixBracketOne) {
    const double e5 = dg::energy_ratio(5.0, dg::EnergyConvention::unweighted);
    const double e6 = dg::energy_ratio(6.0, dg::EnergyConvention::unweighted);
    EXPECT_NEAR(e5, 2.0 * sl::kPi / 6.0, 1.0472 * 1e-3);
    EXPECT_NEAR(e6, 2.0 * sl::kPi / 7.0, 0.8976 * 1e-3);
    EXPECT_NEAR(e5, energy_oracle(5.0, false), 1.0472 * 1e-3);
    EXPECT_NEAR(e6, energy_oracle(6.0, false), 0.8976 * 1e-3);
    EXPECT_GT(e5, 1.0);
    EXPECT_LT(e6, 1.0);
}

TEST(EnergyRatioProperty, ClosedFormsAcrossExponents) {
    double prev = std::numeric_limits<double>::infinity();
    for (int m = 0; m <= 50; ++m) {
        const double u = dg::energy_ratio(m, dg::EnergyConvention::unweighted);
        const double w = dg::energy_ratio(m, dg::EnergyConvention::cosine_weighted);
        const double cu = 2.0 * sl::kPi / (m + 1.0);
        const double cw = 2.0 * sl::kPi / (m + 2.0);
        EXPECT_NEAR(u, cu, cu * 1e-3) << m;
        EXPECT_NEAR(w, cw, cw * 1e-3) << m;
        EXPECT_LT(u, prev) << m;
        prev = u;
        if (m == 4) {
            EXPECT_GT(w, 1.0);
        }
        if (m == 5) {
            EXPECT_LT(w, 1.0);
        }
    }
}

TEST(EnergyRatio, RejectsNegativeExponent) {
    EXPECT_THROW(dg::energy_ratio(-1.0, dg::EnergyConvention::unweighted), std::invalid_argument);
}

// ---- highlight half-angle ----

TEST(HighlightHalfAngle, SevenBitCap) {
    EXPECT_NEAR(dg::highlight_half_angle(127.0), 0.10448, 1e-4);
    EXPECT_NEAR(dg::highlight_half_angle(127.0), oracle::half_angle_bisection(127.0), 1e-9);
    EXPECT_NEAR(sl::degrees(dg::highlight_half_angle(127.0)), 5.99, 0.01);
}

TEST(HighlightHalfAngle, SunSizedExponent) {
    EXPECT_NEAR(dg::highlight_half_angle(5000.0), 0.01665, 1e-5);
    EXPECT_NEAR(sl::degrees(dg::highlight_half_angle(5000.0)), 0.954, 1e-3);
}

TEST(HighlightHalfAngleProperty, DecreasingAndMatchesOracles) {
    double prev = sl::kPi;
    for (double m = 0.5; m < 20000.0; m *= 1.37) {
        const double a = dg::highlight_half_angle(m);
        EXPECT_LT(a, prev);
        prev = a;
        EXPECT_NEAR(a, oracle::half_angle_bisection(m), 1e-9) << m;
        if (m >= 100.0) {
            EXPECT_LT(std::abs(std::sqrt(2.0 * std::log(2.0) / m) / a - 1.0), 0.01) << m;
        }
    }
    EXPECT_THROW(dg::highlight_half_angle(0.0), std::invalid_argument);
}

TEST(MeasureHighlight, RenderedSizeMatchesAnalytic) {
    const sl::Scene s = dg::highlight_probe(127.0, 512);
    const auto fb = sl::render(s, {});
    const auto m = dg::measure_highlight_size(fb, s.camera, dg::kProbeSphere, {0, 0, 1});
    EXPECT_GT(m.pixel_footprint, 0.0);
    EXPECT_NEAR(m.half_angle, dg::highlight_half_angle(127.0), m.pixel_footprint);
    // The brightest sample lies within one footprint of the mirror direction.
    EXPECT_LE(m.peak, 1.0);
    EXPECT_GE(m.peak, std::pow(std::cos(m.pixel_footprint), 127.0));
}

TEST(MeasureHighlight, SharperLobeIsSmaller) {
    const sl::Scene a = dg::highlight_probe(60.0, 256);
    const sl::Scene b = dg::highlight_probe(120.0, 256);
    const auto ma = dg::measure_highlight_size(sl::render(a, {}), a.camera, dg::kProbeSphere, {0, 0, 1});
    const auto mb = dg::measure_highlight_size(sl::render(b, {}), b.camera, dg::kProbeSphere, {0, 0, 1});
    EXPECT_LT(mb.half_angle, ma.half_angle);
    EXPECT_LT(mb.pixels, ma.pixels);
}

TEST(MeasureHighlight, HeadlightEqualsCoaxialDirectional) {
    const sl::Scene d = dg::highlight_probe(80.0, 256);
    sl::Scene h = d;
    h.lights = {sl::Headlight{sl::Color::gray(1.0)}};
    const auto md = dg::measure_highlight_size(sl::render(d, {}), d.camera, dg::kProbeSphere, {0, 0, 1});
    const auto mh = dg::measure_highlight_size(sl::render(h, {}), h.camera, dg::kProbeSphere, {0, 0, 1});
    EXPECT_EQ(md.pixels, mh.pixels);
    EXPECT_DOUBLE_EQ(md.half_angle, mh.half_angle);
}

TEST(MeasureHighlight, ThrowsWithoutHighlight) {
    sl::Scene s = dg::highlight_probe(80.0, 32);
    s.lights.clear();
    EXPECT_THROW(dg::measure_highlight_size(sl::render(s, {}), s.camera, dg::kProbeSphere, {0, 0, 1}),
                 std::runtime_error);
}

TEST(HighlightAreas, SpecularOnlyPerObject) {
    const sl::Scene s = dg::highlight_probe(40.0, 128);
    const auto areas = dg::highlight_pixel_areas(s, {}, 2);
    ASSERT_EQ(areas.size(), 1u);
    EXPECT_EQ(areas[0].object, 0u);
    EXPECT_GT(areas[0].pixels, 0);
}

// ---- cutoff ----

TEST(Cutoff, ClassicAt120DegreesMatchesScan) {
    dg::CutoffConfig c;
    const double a = sl::radians(120.0);
    c.to_light = {std::sin(a), 0, std::cos(a)};
    c.to_eye = {0, 0, 1};
    c.shininess = 10.0;
    const double scan = oracle::terminator_jump({std::sin(a), 0, std::cos(a)}, {0, 0, 1}, 10.0,
                                                [](auto n, auto l, auto v, double m) { return oracle::classic_phong(n, l, v, m); },
                                                100'000);
    EXPECT_NEAR(dg::cutoff_discontinuity(c).max_jump, scan, 1e-3);
    EXPECT_NEAR(scan, std::pow(0.5, 10.0), 1e-6);
}

TEST(Cutoff, HeadlightInteriorIsFree) {
    dg::CutoffConfig c;
    c.to_light = c.to_eye = {0, 0, 1};
    EXPECT_LE(dg::cutoff_discontinuity(c).max_jump, 1e-12);
}

TEST(CutoffProperty, RandomConfigurations) {
    oracle::Gen gen(314);
    for (int i = 0; i < 50; ++i) {
        const oracle::V l = gen.direction();
        const oracle::V v = gen.direction();
        const double m = gen.uniform(1.0, 100.0);
        dg::CutoffConfig c;
        c.to_light = to_vec(l);
        c.to_eye = to_vec(v);
        c.shininess = m;
        c.samples = 20'000;
        const double classic = dg::cutoff_discontinuity(c).max_jump;
        const double scan = oracle::terminator_jump(
            l, v, m, [](auto n, auto ll, auto vv, double mm) { return oracle::classic_phong(n, ll, vv, mm); });
        EXPECT_GE(classic, 0.0);
        EXPECT_NEAR(classic, scan, 1e-3) << i;
        // On the terminator R = -L, so the jump vanishes exactly when L.V >= 0.
        if (oracle::dot(l, v) >= 0.0) {
            EXPECT_EQ(classic, 0.0);
        }
        if (oracle::dot(l, v) < -0.1) {
            EXPECT_GT(classic, 0.0);
        }
        c.model = sl::SpecularModel::modified();
        EXPECT_LE(dg::cutoff_discontinuity(c).max_jump, 1e-6) << i;
        c.model = sl::SpecularModel::modified(true);
        EXPECT_LE(dg::cutoff_discontinuity(c).max_jump, 1e-6) << i;
    }
}

TEST(Cutoff, SceneOverloadUsesMaterialAndLight) {
    sl::Scene s = dg::sphere_probe(sl::Material::glossy(0.0, 0.5, 10.0),
                                   {sl::DirectionalLight{{-std::sin(sl::radians(120.0)), 0, -std::cos(sl::radians(120.0))},
                                                         sl::Color::gray(1.0)}},
                                   32);
    EXPECT_NEAR(dg::cutoff_discontinuity(s, sl::SpecularModel::classic()).max_jump, 0.5 * std::pow(0.5, 10.0), 1e-6);
    EXPECT_LE(dg::cutoff_discontinuity(s, sl::SpecularModel::modified()).max_jump, 1e-6);
    s.lights.push_back(s.lights.front());
    EXPECT_THROW(dg::cutoff_discontinuity(s, sl::SpecularModel::classic()), std::invalid_argument);
}

// ---- superposition ----

TEST(Superposition, ClosedForm) {
    EXPECT_NEAR(dg::superposition_ratio(0.5, 2.2), std::pow(2.0, 1.2), 1e-12);
    EXPECT_NEAR(dg::superposition_ratio(0.5, 2.2), 2.2973967099940698, 1e-12);
    EXPECT_DOUBLE_EQ(dg::superposition_ratio(0.3, 1.0), 1.0);
    // Display gamma 2: each light alone shows 1 unit, both together show 4.
    const double v = 0.25;
    const double alone = sl::displayed_luminance(v, 2.0);
    EXPECT_DOUBLE_EQ(sl::displayed_luminance(2.0 * v, 2.0) / alone, 4.0);
    EXPECT_THROW(dg::superposition_ratio(0.6, 2.2), std::invalid_argument);
    EXPECT_THROW(dg::superposition_ratio(0.0, 2.2), std::invalid_argument);
}

TEST(SuperpositionProperty, RatioIsPowerOfTwo) {
    oracle::Gen gen(5);
    for (int i = 0; i < 200; ++i) {
        const double g = gen.uniform(0.5, 3.0);
        const double v = gen.uniform(1e-3, 0.5);
        EXPECT_NEAR(dg::superposition_ratio(v, g), std::pow(2.0, g - 1.0), 1e-12);
    }
}

// ---- overflow / image difference ----

TEST(OverflowStats, DarkImageHasNone) {
    const auto s = dg::overflow_stats(sl::Framebuffer(8, 8));
    EXPECT_EQ(s.fraction, 0.0);
    EXPECT_EQ(s.max_value, 0.0);
}

TEST(OverflowStats, OverlappingHighlightsClipFlat) {
    const auto full = dg::overflow_stats(sl::render(dg::overflow_probe(1.0, 10.0, 256), {}));
    const auto half = dg::overflow_stats(sl::render(dg::overflow_probe(0.5, 10.0, 256), {}));
    EXPECT_GT(full.fraction, 0.0);
    EXPECT_GT(full.max_value, 1.0);
    EXPECT_EQ(full.plateau_gradient, 0.0);
    EXPECT_EQ(half.fraction, 0.0);
}

TEST(ImageDifference, IdenticalAndMismatched) {
    sl::Framebuffer a(4, 4, sl::Color::gray(0.3));
    sl::Framebuffer b = a;
    EXPECT_EQ(dg::image_difference(a, b).max_abs, 0.0);
    b.set(1, 1, sl::Color::gray(0.7));
    const auto d = dg::image_difference(a, b);
    EXPECT_NEAR(d.max_abs, 0.4, 1e-15);
    EXPECT_NEAR(d.mean_abs, 0.4 / 16.0, 1e-15);
    EXPECT_THROW(dg::image_difference(a, sl::Framebuffer(2, 2)), std::invalid_argument);
}

// ---- terminator ----

TEST(Terminator, ConfinementAndHardness) {
    const sl::Vec3 l = sl::normalize({-1.0, 0.6, 0.5});
    const sl::Scene s = dg::sphere_probe(sl::Material::matte(1.0), {sl::DirectionalLight{-l, sl::Color::gray(1.0)}});
    const auto fb = sl::render(s, {});
    const auto ident = dg::terminator_profile(fb, s.camera, dg::kProbeSphere, l, sl::Identity{});
    const auto gamma = dg::terminator_profile(fb, s.camera, dg::kProbeSphere, l, sl::PowerLaw{2.2});
    const double limit = sl::kPi / 2.0 + ident.pixel_footprint;
    EXPECT_LE(ident.confinement_angle, limit);
    EXPECT_LE(gamma.confinement_angle, limit);
    EXPECT_GT(gamma.confinement_angle, sl::radians(85.0));
    EXPECT_GE(gamma.max_gradient, 1.5 * ident.max_gradient);
}

// 1-D analytic profile: the steepest step of cos(theta)^(1/2.2) next to the
// terminator dwarfs that of cos(theta) for the same angular step.
TEST(Terminator, AnalyticProfileRatio) {
    const double step = 0.01;
    const double identity = std::cos(sl::kPi / 2.0 - step);
    const double gamma = std::pow(identity, 1.0 / 2.2);
    EXPECT_GT(gamma / identity, 1.5);
}

TEST(Terminator, AmbientOnlyIsFlat) {
    const sl::Scene s = dg::sphere_probe(sl::Material::matte(1.0, 1.0), {sl::AmbientLight{sl::Color::gray(0.5)}}, 128);
    const auto p = dg::terminator_profile(sl::render(s, {}), s.camera, dg::kProbeSphere, {0, 0, 1}, sl::PowerLaw{2.2});
    EXPECT_EQ(p.max_gradient, 0.0);
}

// ---- report ----

TEST(Report, EntrySemantics) {
    EXPECT_TRUE(dg::Entry::against(1.0, 1.0005, 1e-3).pass);
    EXPECT_FALSE(dg::Entry::against(1.0, 1.002, 1e-3).pass);
    const auto doc = dg::Entry::documented("not here");
    EXPECT_TRUE(doc.pass);
    EXPECT_TRUE(std::isnan(doc.value));
    const auto fail = dg::Entry::failure("boom");
    EXPECT_FALSE(fail.pass);
    dg::DiagnosticReport r;
    r.add("a", dg::Entry::check(1.0, true, ""));
    EXPECT_TRUE(r.all_pass());
    r.add("b", fail);
    EXPECT_FALSE(r.all_pass());
    const auto j = nlohmann::json::parse(dg::to_json_text(r));
    EXPECT_TRUE(j.at("b").at("value").is_null());
    EXPECT_EQ(j.at("b").at("pass"), false);
}

TEST(Report, FullReportCoversEveryRowAndPasses) {
    const auto report = dg::run_full_report();
    for (const char* key :
         {"energy.unweighted.m5", "energy.unweighted.m6", "energy.crossing.unweighted", "highlight.half_angle.m127",
          "highlight.measured.m127", "cutoff.jump", "superposition.image_path", "superposition.closed_form",
          "overflow.fraction", "overflow.plateau_gradient", "terminator.gradient_ratio", "ambient.gradient",
          "headlight.bump_dent_max_abs", "oblique.bump_dent_max_abs", "many_lights.bump_dent_max_abs",
          "shadows.fig1e_ground_ratio", "coupling.fig7_far_over_near_area", "collimated.unlit_fraction",
          "moving_lights", "per_object_lighting"}) {
        EXPECT_TRUE(report.entries.count(key)) << key;
    }
    EXPECT_NE(report.entries.at("moving_lights").note.find("documented, not measured"), std::string::npos);
    for (const auto& [key, e] : report.entries) EXPECT_TRUE(e.pass) << key << ": " << e.note;

    // pass <=> |value - oracle| <= tolerance wherever an oracle is present.
    const auto j = nlohmann::json::parse(dg::to_json_text(report));
    for (const auto& [key, e] : j.items()) {
        if (e.at("oracle").is_null()) continue;
        const double diff = std::abs(e.at("value").get<double>() - e.at("oracle").get<double>());
        EXPECT_EQ(e.at("pass").get<bool>(), diff <= e.at("tolerance").get<double>()) << key;
    }
}

TEST(Report, ModifiedModelCutoffEntry) {
    dg::ReportConfig cfg;
    cfg.model = sl::SpecularModel::modified();
    const auto r = dg::run_audit(dg::Audit::cutoff, cfg);
    EXPECT_TRUE(r.entries.at("cutoff.jump").pass);
    EXPECT_LE(r.entries.at("cutoff.jump").value, 1e-6);
}

TEST(Report, SubErrorsAreRecordedNotThrown) {
    dg::ReportConfig cfg;
    cfg.shininess = -1.0;
    dg::DiagnosticReport r;
    EXPECT_NO_THROW(r = dg::run_audit(dg::Audit::all, cfg));
    EXPECT_TRUE(r.entries.count("energy.error"));
    EXPECT_FALSE(r.all_pass());
    // Unaffected sections still ran.
    EXPECT_TRUE(r.entries.count("superposition.closed_form"));
}
