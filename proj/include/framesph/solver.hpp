#pragma once

#include <cstdint>
#include <functional>

#include "framesph/particles.hpp"

namespace framesph::solver {

struct SolverConfig {
    double steady_tolerance = 1e-6;     // K per pseudo-time unit, on max |dT/dt|
    std::int64_t max_steps = 5'000'000;
    double dt_safety = 1.0;             // multiplier on the stability step
    std::int64_t report_interval = 1000;
    int threads = 0;                    // 0 = all available
};

struct SteadyState {
    std::vector<double> temperatures;
    std::int64_t steps_taken = 0;
    double final_residual = 0.0;
    bool converged = false;
};

// Pairwise interface conductivity 4·k_i·k_j/(k_i + k_j).
double effective_conductivity(double k_i, double k_j);

// Internal conduction: pairwise neighbor exchange with the harmonic-mean
// interface conductivity.
double conduction_rate(const particles::ParticleSet &ps, std::size_t i);

// Convective boundary term; zero for particles without a convective face.
double convection_rate(const particles::ParticleSet &ps, std::size_t i);

// dt_safety · 0.5 · h² / k_max.
double stable_dt(const particles::ParticleSet &ps, const particles::KernelSpec &spec,
                 const SolverConfig &cfg);

// One explicit forward step from the pre-step temperature snapshot.
particles::ParticleSet step(particles::ParticleSet ps, double dt);

// Called every report_interval residual checks and once at the end.
using ProgressFn = std::function<void(std::int64_t step, double residual, double pseudo_time)>;

// Iterates until max |dT/dt| <= steady_tolerance or max_steps updates were
// applied. Updates ps.temperature in place; non-convergence is reported via
// the converged flag, not an exception. Deterministic for fixed inputs
// regardless of thread count.
SteadyState run_to_steady(particles::ParticleSet &ps, const SolverConfig &cfg,
                          const ProgressFn &progress = {});

} // namespace framesph::solver
