#pragma once

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "shadelab/cli/scene_file.hpp"
#include "shadelab/core/image_io.hpp"
#include "shadelab/diagnostics/full_report.hpp"
#include "shadelab/figures/figures.hpp"

namespace shadelab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitDiagnosticFailure = 2;

namespace detail {

/// Parses "none", "srgb" or a positive gamma.
inline TransferFunction parse_gamma(const std::string& token) {
    if (token == "none") return Identity{};
    if (token == "srgb") return SrgbPiecewise{};
    std::size_t used = 0;
    double g = 0.0;
    try {
        g = std::stod(token, &used);
    } catch (const std::logic_error&) {
        used = 0;
    }
    if (used != token.size() || !(g > 0.0)) {
        throw CLI::ValidationError("--gamma", "expected a positive number, 'srgb' or 'none', got '" + token + "'");
    }
    return PowerLaw{g};
}

inline SpecularModel parse_model(const std::string& name, bool normalized) {
    if (name == "classic") return SpecularModel::classic();
    return SpecularModel::modified(normalized);
}

/// `<out>` for the single/first output, `<stem>_<variant>` siblings for others.
inline std::filesystem::path output_path(const std::string& out, const figures::FigureSpec& spec, bool several) {
    if (out.empty()) return spec.file_stem() + ".ppm";
    std::filesystem::path p(out);
    if (!several) return p;
    const std::string stem = p.stem().string() + (spec.variant.empty() ? "" : "_" + spec.variant);
    return p.parent_path() / (stem + ".ppm");
}

inline void write_twins(const Framebuffer& fb, const TransferFunction& tf, std::filesystem::path path,
                        std::ostream& out) {
    write_image(fb, tf, path);
    const std::filesystem::path pfm = std::filesystem::path(path).replace_extension(".pfm");
    write_linear(fb, pfm);
    out << "wrote " << path.string() << " and " << pfm.string() << "\n";
}

}  // namespace detail

/// Runs one command. `args` excludes the program name. Usage errors print a
/// one-line reason plus the usage synopsis to `err`.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Fixed-function shading laboratory: render test figures and audit shading artefacts", "shadelab"};
    app.require_subcommand(1);

    // render
    auto* render_cmd = app.add_subcommand("render", "Render a built-in figure or a scene file");
    std::string figure_id;
    std::string scene_path;
    std::string variant;
    std::string model = "classic";
    bool normalized = false;
    std::string gamma;
    std::string shadows;
    std::string superposition;
    std::string out_path;
    int resolution = 512;
    auto* fig_opt = render_cmd->add_option("--figure", figure_id, "Figure id (see list-figures)");
    auto* scene_opt = render_cmd->add_option("--scene", scene_path, "Scene file")->check(CLI::ExistingFile);
    fig_opt->excludes(scene_opt);
    render_cmd->add_option("--variant", variant, "Figure variant; default renders all variants");
    render_cmd->add_option("--model", model, "Specular model")
        ->check(CLI::IsMember({"classic", "modified"}))
        ->capture_default_str();
    render_cmd->add_flag("--normalized", normalized, "Scale the modified lobe by (m+2)/(2 pi)");
    render_cmd->add_option("--gamma", gamma, "Output encoding: gamma value, srgb or none (default: figure's own; none for scenes)");
    render_cmd->add_option("--shadows", shadows, "Cast shadows (default: figure's own; off for scenes)")
        ->check(CLI::IsMember({"on", "off"}));
    render_cmd->add_option("--superposition", superposition, "Light combination (default: figure's own; linear for scenes)")
        ->check(CLI::IsMember({"linear", "naive"}));
    render_cmd->add_option("--resolution", resolution, "Figure panel size in pixels")
        ->check(CLI::Range(8, 8192))
        ->capture_default_str();
    render_cmd->add_option("--out", out_path, "Output PPM path; a linear PFM twin is written alongside");

    // audit
    auto* audit_cmd = app.add_subcommand("audit", "Run shading diagnostics");
    std::string audit_name;
    std::optional<double> shininess;
    double audit_gamma = 2.2;
    std::string audit_model = "classic";
    bool audit_normalized = false;
    std::string json_path;
    bool strict = false;
    int audit_resolution = 512;
    audit_cmd
        ->add_option("name", audit_name, "energy|halfangle|cutoff|superposition|overflow|terminator|all")
        ->required()
        ->check(CLI::IsMember({"energy", "halfangle", "cutoff", "superposition", "overflow", "terminator", "all"}));
    audit_cmd->add_option("--shininess", shininess, "Phong exponent to audit (default: per audit)")
        ->check(CLI::NonNegativeNumber);
    audit_cmd->add_option("--gamma", audit_gamma, "Display gamma")->check(CLI::PositiveNumber)->capture_default_str();
    audit_cmd->add_option("--model", audit_model, "Specular model judged by the cutoff audit")
        ->check(CLI::IsMember({"classic", "modified"}))
        ->capture_default_str();
    audit_cmd->add_flag("--normalized", audit_normalized, "Normalized modified lobe");
    audit_cmd->add_option("--resolution", audit_resolution, "Probe image size in pixels")
        ->check(CLI::Range(32, 8192))
        ->capture_default_str();
    audit_cmd->add_option("--json", json_path, "Write the JSON report here");
    audit_cmd->add_flag("--strict", strict, "Exit with 2 if any check fails");

    auto* list_cmd = app.add_subcommand("list-figures", "Print figure ids and their variants");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        err << app.help();
        return kExitUsage;
    }

    auto usage_error = [&](const std::string& reason, const CLI::App* cmd) {
        err << "error: " << reason << "\n" << cmd->help();
        return kExitUsage;
    };

    if (list_cmd->parsed()) {
        for (const auto id : figures::kAllFigures) {
            out << figures::to_string(id);
            for (const auto& v : figures::variants(id)) {
                if (!v.empty()) out << " " << v;
            }
            out << "\n";
        }
        return kExitOk;
    }

    if (render_cmd->parsed()) {
        if (figure_id.empty() == scene_path.empty()) {
            return usage_error("render needs exactly one of --figure or --scene", render_cmd);
        }
        std::optional<TransferFunction> tf;
        try {
            if (!gamma.empty()) tf = detail::parse_gamma(gamma);
        } catch (const CLI::ValidationError& e) {
            return usage_error(e.what(), render_cmd);
        }
        auto apply = [&](RenderOptions& o) {
            o.specular_model = detail::parse_model(model, normalized);
            if (tf) o.output_tf = *tf;
            if (!shadows.empty()) o.shadows = shadows == "on" ? Shadows::on : Shadows::off;
            if (!superposition.empty()) {
                o.superposition = superposition == "naive" ? Superposition::naive_encoded_sum
                                                           : Superposition::linear_then_encode;
            }
        };
        try {
            if (!scene_path.empty()) {
                const Scene scene = load_scene(scene_path);
                RenderOptions options;
                apply(options);
                const Framebuffer fb = render(scene, options);
                detail::write_twins(fb, display_transfer(options),
                                    std::filesystem::path(out_path.empty() ? "scene.ppm" : out_path), out);
                return kExitOk;
            }
            const auto id = figures::parse_figure_id(figure_id);
            if (!id) return usage_error("unknown figure id '" + figure_id + "'", render_cmd);
            figures::FigureParams params;
            params.resolution = resolution;
            std::vector<figures::FigureSpec> specs;
            if (variant.empty()) {
                specs = figures::build_all_variants(*id, params);
            } else {
                try {
                    specs.push_back(figures::build(*id, variant, params));
                } catch (const std::invalid_argument& e) {
                    return usage_error(e.what(), render_cmd);
                }
            }
            for (auto& spec : specs) {
                apply(spec.options);
                const auto result = figures::render_figure(spec);
                detail::write_twins(result.image, display_transfer(spec.options),
                                    detail::output_path(out_path, spec, specs.size() > 1), out);
            }
            return kExitOk;
        } catch (const SceneFileError& e) {
            return usage_error(scene_path + ": " + e.what(), render_cmd);
        } catch (const std::exception& e) {
            err << "error: " << e.what() << "\n";
            return kExitUsage;
        }
    }

    // audit
    diagnostics::ReportConfig cfg;
    cfg.shininess = shininess;
    cfg.display_gamma = audit_gamma;
    cfg.model = detail::parse_model(audit_model, audit_normalized);
    cfg.resolution = audit_resolution;
    static const std::map<std::string, diagnostics::Audit> audits{
        {"energy", diagnostics::Audit::energy},         {"halfangle", diagnostics::Audit::halfangle},
        {"cutoff", diagnostics::Audit::cutoff},         {"superposition", diagnostics::Audit::superposition},
        {"overflow", diagnostics::Audit::overflow},     {"terminator", diagnostics::Audit::terminator},
        {"all", diagnostics::Audit::all}};
    const auto report = diagnostics::run_audit(audits.at(audit_name), cfg);
    const std::string text = diagnostics::to_json_text(report);
    if (json_path.empty()) {
        out << text;
    } else {
        std::ofstream f(json_path, std::ios::binary);
        if (!(f << text)) {
            err << "error: cannot write '" << json_path << "'\n";
            return kExitUsage;
        }
        for (const auto& [key, e] : report.entries) {
            out << (e.pass ? "PASS " : "FAIL ") << key << "\n";
        }
    }
    return strict && !report.all_pass() ? kExitDiagnosticFailure : kExitOk;
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(args, out, err);
}

}  // namespace shadelab::cli
