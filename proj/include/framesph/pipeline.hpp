#pragma once

#include <optional>
#include <string>

#include "framesph/report.hpp"

namespace framesph::pipeline {

// One simulate/validate invocation: load -> cavity resolution -> corner rule
// -> particle generation -> solve -> report.
struct RunConfig {
    std::string input_path;
    std::optional<double> dp;
    std::optional<double> h_over_dp;
    std::optional<std::string> kernel; // "quintic_spline" or "wendland_c2"
    std::optional<double> tolerance;
    std::optional<std::int64_t> max_steps;
    std::optional<double> dt_safety;
    std::optional<std::int64_t> report_interval;
    int threads = 0;
};

struct PipelineResult {
    geometry::ProfileSpec profile;
    particles::ParticleSet particles;
    solver::SteadyState steady;
    report::SteadyStateReport report;
};

particles::ResolutionSpec resolution_from(const RunConfig &cfg);
solver::SolverConfig solver_config_from(const RunConfig &cfg);

// Prepares the particle set without solving (the export-field path).
particles::ParticleSet prepare_particles(const geometry::ProfileSpec &profile,
                                         const RunConfig &cfg);

PipelineResult run_simulation(const RunConfig &cfg, const solver::ProgressFn &progress = {});

} // namespace framesph::pipeline
