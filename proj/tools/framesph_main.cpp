// framesph command line: simulate | cavity | validate | export-field.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "framesph/error.hpp"
#include "framesph/field_export.hpp"
#include "framesph/pipeline.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_error = 1;
constexpr int exit_validation_failed = 2;
constexpr int exit_not_converged = 3;

struct CliOptions {
    framesph::pipeline::RunConfig run;
    std::optional<std::string> field_csv;
    std::optional<std::string> field_vtk;
    std::optional<std::string> report_path;
    std::optional<std::string> convergence_log;
    bool quiet = false;
};

void add_resolution_flags(CLI::App *cmd, CliOptions &opt) {
    cmd->add_option("-i,--input", opt.run.input_path, "profile document (JSON)")->required();
    cmd->add_option("--dp", opt.run.dp, "particle spacing in metres (default 0.001)");
    cmd->add_option("--h-over-dp", opt.run.h_over_dp, "smoothing length / spacing (default 1.3)");
    cmd->add_option("--kernel", opt.run.kernel, "kernel family: quintic_spline | wendland_c2");
}

void add_solver_flags(CLI::App *cmd, CliOptions &opt) {
    cmd->add_option("--tolerance", opt.run.tolerance,
                    "steady-state residual threshold in K per pseudo-time (default 1e-6)");
    cmd->add_option("--max-steps", opt.run.max_steps, "iteration cap (default 5e6)");
    cmd->add_option("--dt-safety", opt.run.dt_safety, "time step safety factor (default 1.0)");
    cmd->add_option("--report-interval", opt.run.report_interval,
                    "telemetry interval in steps (default 1000)");
    cmd->add_option("--threads", opt.run.threads, "worker threads (default: all)");
    cmd->add_flag("--quiet", opt.quiet, "suppress progress telemetry");
}

void add_output_flags(CLI::App *cmd, CliOptions &opt) {
    cmd->add_option("--field-csv", opt.field_csv, "write the particle field as CSV (x,y,k,T)");
    cmd->add_option("--vtk", opt.field_vtk, "write the particle field as legacy VTK point data");
    cmd->add_option("--report", opt.report_path, "write the machine-readable report (JSON)");
    cmd->add_option("--convergence-log", opt.convergence_log,
                    "write the (step, residual) convergence history as CSV");
}

void write_artifacts(const framesph::pipeline::PipelineResult &result, const CliOptions &opt,
                     const std::vector<std::pair<std::int64_t, double>> &history) {
    if (opt.field_csv) {
        framesph::field_export::write_csv_file(result.particles, *opt.field_csv);
    }
    if (opt.field_vtk) {
        framesph::field_export::write_vtk_file(result.particles, *opt.field_vtk);
    }
    if (opt.report_path) {
        std::ofstream out(*opt.report_path);
        if (!out) {
            throw framesph::Error("cli", "cannot write '" + *opt.report_path + "'");
        }
        out << framesph::report::to_json(result.report);
    }
    if (opt.convergence_log) {
        std::ofstream out(*opt.convergence_log);
        if (!out) {
            throw framesph::Error("cli", "cannot write '" + *opt.convergence_log + "'");
        }
        out << "step,residual\n";
        char buf[64];
        for (const auto &[step, residual] : history) {
            std::snprintf(buf, sizeof(buf), "%lld,%.17g\n", static_cast<long long>(step), residual);
            out << buf;
        }
    }
}

int run_pipeline_command(const CliOptions &opt, bool validate_mode) {
    std::vector<std::pair<std::int64_t, double>> history;
    std::int64_t last_logged = -1;
    auto progress = [&](std::int64_t step, double residual, double pseudo_time) {
        if (step != last_logged) {
            history.emplace_back(step, residual);
            last_logged = step;
        }
        if (!opt.quiet) {
            std::fprintf(stderr, "step %lld  t %.6e  residual %.6e\n",
                         static_cast<long long>(step), pseudo_time, residual);
        }
    };

    framesph::pipeline::PipelineResult result = framesph::pipeline::run_simulation(opt.run, progress);

    if (validate_mode && !result.report.reference) {
        throw framesph::Error("cli", "validate needs a profile with a reference_case");
    }

    write_artifacts(result, opt, history);
    std::cout << framesph::report::to_text(result.report);

    if (!result.steady.converged) {
        std::cerr << "framesph: not converged after " << result.steady.steps_taken << " steps\n";
        return exit_not_converged;
    }
    if (validate_mode && !result.report.all_pass) {
        return exit_validation_failed;
    }
    return exit_ok;
}

int run_cavity_command(double gap, std::optional<double> width, std::optional<double> depth,
                       std::optional<double> area, std::optional<double> depth_extent,
                       std::optional<double> width_extent, const framesph::cavity::CavityConstants &c,
                       bool csv) {
    namespace cav = framesph::cavity;
    cav::CavitySpec spec;
    spec.name = "cli";
    spec.gap_width = gap;
    const bool rect_given = width.has_value() && depth.has_value();
    const bool poly_given = area.has_value() && depth_extent.has_value() && width_extent.has_value();
    if (rect_given == poly_given) {
        throw framesph::Error("cli",
                              "give either --width and --depth, or --area, --depth-extent and --width-extent");
    }
    if (rect_given) {
        spec.geometry = cav::Rectangle{*width, *depth};
    } else {
        spec.geometry = cav::PolygonSummary{*area, *depth_extent, *width_extent};
    }
    const cav::CavityEvaluation eval = cav::equivalent_conductivity(spec, c);
    const bool ventilated_away = !eval.k_eq.has_value();
    if (csv) {
        std::printf("quantity,value\n");
        std::printf("class,%s\n", cav::to_string(eval.ventilation).c_str());
        std::printf("b,%.10g\n", eval.rectangle.width_b);
        std::printf("d,%.10g\n", eval.rectangle.depth_d);
        if (!ventilated_away) {
            std::printf("h_a,%.10g\n", eval.h_a);
            std::printf("h_r,%.10g\n", eval.h_r);
            std::printf("R,%.10g\n", eval.resistance);
            std::printf("k_eq,%.10g\n", *eval.k_eq);
        } else {
            std::printf("k_eq,\n");
        }
    } else {
        std::printf("class  %s\n", cav::to_string(eval.ventilation).c_str());
        std::printf("b      %.6g m\n", eval.rectangle.width_b);
        std::printf("d      %.6g m\n", eval.rectangle.depth_d);
        if (!ventilated_away) {
            std::printf("h_a    %.6g W/(m2*K)\n", eval.h_a);
            std::printf("h_r    %.6g W/(m2*K)\n", eval.h_r);
            std::printf("R      %.6g m2*K/W\n", eval.resistance);
            std::printf("k_eq   %.6g W/(m*K)\n", *eval.k_eq);
        } else {
            std::printf("k_eq   - (treat the walls as exposed surfaces)\n");
        }
    }
    return exit_ok;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Mesh-free steady-state heat transfer for window-frame cross-sections"};
    app.require_subcommand(1);

    CliOptions simulate_opt;
    CLI::App *simulate = app.add_subcommand("simulate", "solve a profile to steady state");
    add_resolution_flags(simulate, simulate_opt);
    add_solver_flags(simulate, simulate_opt);
    add_output_flags(simulate, simulate_opt);

    CliOptions validate_opt;
    CLI::App *validate = app.add_subcommand(
        "validate", "solve and compare L2D and Uf against the profile's reference case");
    add_resolution_flags(validate, validate_opt);
    add_solver_flags(validate, validate_opt);
    add_output_flags(validate, validate_opt);

    CliOptions export_opt;
    CLI::App *export_field =
        app.add_subcommand("export-field", "generate the particle lattice without solving");
    add_resolution_flags(export_field, export_opt);
    add_output_flags(export_field, export_opt);

    double gap = 0.0;
    std::optional<double> width, depth, area, depth_extent, width_extent;
    framesph::cavity::CavityConstants constants;
    bool cavity_csv = false;
    CLI::App *cavity = app.add_subcommand("cavity", "air-cavity classification and coefficients");
    cavity->add_option("--gap", gap, "gap width to the outside in metres (default 0)");
    cavity->add_option("-b,--width", width, "rectangular cavity width b (m)");
    cavity->add_option("-d,--depth", depth, "rectangular cavity depth d, heat-flow direction (m)");
    cavity->add_option("--area", area, "non-rectangular cavity area A' (m2)");
    cavity->add_option("--depth-extent", depth_extent, "non-rectangular extent d' (m)");
    cavity->add_option("--width-extent", width_extent, "non-rectangular extent b' (m)");
    cavity->add_option("--c1", constants.c1, "convective constant C1 (default 0.025)");
    cavity->add_option("--c3", constants.c3, "convective floor C3 (default 1.57)");
    cavity->add_option("--c4", constants.c4, "radiative constant C4 (default 2.11)");
    cavity->add_flag("--csv", cavity_csv, "CSV output");

    CLI11_PARSE(app, argc, argv);

    try {
        if (simulate->parsed()) {
            return run_pipeline_command(simulate_opt, false);
        }
        if (validate->parsed()) {
            return run_pipeline_command(validate_opt, true);
        }
        if (export_field->parsed()) {
            const auto profile = framesph::geometry::load_profile_file(export_opt.run.input_path);
            const auto ps = framesph::pipeline::prepare_particles(profile, export_opt.run);
            if (export_opt.field_csv) {
                framesph::field_export::write_csv_file(ps, *export_opt.field_csv);
            }
            if (export_opt.field_vtk) {
                framesph::field_export::write_vtk_file(ps, *export_opt.field_vtk);
            }
            if (!export_opt.field_csv && !export_opt.field_vtk) {
                framesph::field_export::write_csv(ps, std::cout);
            }
            return exit_ok;
        }
        if (cavity->parsed()) {
            return run_cavity_command(gap, width, depth, area, depth_extent, width_extent,
                                      constants, cavity_csv);
        }
    } catch (const framesph::Error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_error;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_error;
    }
    return exit_error;
}
