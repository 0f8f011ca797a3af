#include "framesph/pipeline.hpp"

namespace framesph::pipeline {

particles::ResolutionSpec resolution_from(const RunConfig &cfg) {
    particles::ResolutionSpec res;
    if (cfg.dp) res.dp = *cfg.dp;
    if (cfg.h_over_dp) res.h_over_dp = *cfg.h_over_dp;
    return res;
}

solver::SolverConfig solver_config_from(const RunConfig &cfg) {
    solver::SolverConfig sc;
    if (cfg.tolerance) sc.steady_tolerance = *cfg.tolerance;
    if (cfg.max_steps) sc.max_steps = *cfg.max_steps;
    if (cfg.dt_safety) sc.dt_safety = *cfg.dt_safety;
    if (cfg.report_interval) sc.report_interval = *cfg.report_interval;
    sc.threads = cfg.threads;
    return sc;
}

particles::ParticleSet prepare_particles(const geometry::ProfileSpec &profile,
                                         const RunConfig &cfg) {
    const geometry::ProfileSpec resolved = geometry::resolve_cavities(profile);
    const geometry::ProfileSpec cornered = geometry::apply_corner_rule(resolved);
    const particles::ResolutionSpec res = resolution_from(cfg);
    const particles::KernelFamily family =
        cfg.kernel ? particles::kernel_family_from_string(*cfg.kernel)
                   : particles::KernelFamily::quintic_spline;
    particles::ParticleSet ps = particles::generate_particles(cornered, res, family);
    const particles::KernelSpec spec = ps.kernel;
    return particles::build_neighborhoods(std::move(ps), spec);
}

PipelineResult run_simulation(const RunConfig &cfg, const solver::ProgressFn &progress) {
    PipelineResult result;
    result.profile = geometry::load_profile_file(cfg.input_path);
    result.particles = prepare_particles(result.profile, cfg);
    result.steady = solver::run_to_steady(result.particles, solver_config_from(cfg), progress);
    result.report = report::make_report(result.particles, result.steady, result.profile);
    return result;
}

} // namespace framesph::pipeline
