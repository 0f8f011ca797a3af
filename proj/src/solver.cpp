#include "framesph/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "framesph/error.hpp"

namespace framesph::solver {

namespace {

using particles::ParticleSet;

struct KahanSum {
    double sum = 0.0;
    double carry = 0.0;
    void add(double v) {
        const double y = v - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

double conduction_of(const ParticleSet &ps, const double *temperature, std::size_t i) {
    KahanSum acc;
    const double k_i = ps.conductivity[i];
    const double t_i = temperature[i];
    for (std::size_t e = ps.neighbor_offset[i]; e < ps.neighbor_offset[i + 1]; ++e) {
        const particles::Neighbor &nb = ps.neighbors[e];
        const double k_j = ps.conductivity[nb.index];
        const double k_eff = 4.0 * k_i * k_j / (k_i + k_j);
        acc.add(k_eff * (t_i - temperature[nb.index]) / nb.distance * ps.volume[nb.index] *
                nb.dwdr);
    }
    return acc.sum;
}

double convection_of(const ParticleSet &ps, const double *temperature, std::size_t i) {
    const double conductance = ps.boundary_conductance[i];
    if (conductance <= 0.0) return 0.0;
    const auto &face = ps.faces[static_cast<std::size_t>(ps.face[i])];
    return conductance * (*face.ambient - temperature[i]);
}

int thread_count(const SolverConfig &cfg) {
#ifdef _OPENMP
    return cfg.threads > 0 ? cfg.threads : omp_get_max_threads();
#else
    (void)cfg;
    return 1;
#endif
}

void compute_rates(const ParticleSet &ps, const double *temperature, double *rate, int threads) {
    const auto n = static_cast<std::int64_t>(ps.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(threads)
#else
    (void)threads;
#endif
    for (std::int64_t i = 0; i < n; ++i) {
        const auto idx = static_cast<std::size_t>(i);
        rate[idx] = conduction_of(ps, temperature, idx) + convection_of(ps, temperature, idx);
    }
}

} // namespace

double effective_conductivity(double k_i, double k_j) {
    if (!(k_i > 0.0) || !(k_j > 0.0)) {
        throw Error("solver", "conductivities must be positive");
    }
    return 4.0 * k_i * k_j / (k_i + k_j);
}

double conduction_rate(const ParticleSet &ps, std::size_t i) {
    return conduction_of(ps, ps.temperature.data(), i);
}

double convection_rate(const ParticleSet &ps, std::size_t i) {
    return convection_of(ps, ps.temperature.data(), i);
}

double stable_dt(const ParticleSet &ps, const particles::KernelSpec &spec,
                 const SolverConfig &cfg) {
    if (ps.size() == 0) {
        throw Error("solver", "empty particle set");
    }
    const double k_max = *std::max_element(ps.conductivity.begin(), ps.conductivity.end());
    const double h = spec.smoothing_length;
    return cfg.dt_safety * 0.5 * h * h / k_max;
}

particles::ParticleSet step(particles::ParticleSet ps, double dt) {
    const std::size_t n = ps.size();
    std::vector<double> rate(n);
    compute_rates(ps, ps.temperature.data(), rate.data(), 1);
    for (std::size_t i = 0; i < n; ++i) {
        ps.temperature[i] += dt * rate[i];
    }
    return ps;
}

SteadyState run_to_steady(particles::ParticleSet &ps, const SolverConfig &cfg,
                          const ProgressFn &progress) {
    const double dt = stable_dt(ps, ps.kernel, cfg);
    const int threads = thread_count(cfg);
    const std::size_t n = ps.size();

    std::vector<double> rate(n, 0.0);
    std::int64_t applied = 0;
    double residual = 0.0;
    bool converged = false;

    for (;;) {
        compute_rates(ps, ps.temperature.data(), rate.data(), threads);
        residual = 0.0;
        bool finite = true;
        for (std::size_t i = 0; i < n; ++i) {
            const double magnitude = std::abs(rate[i]);
            if (!std::isfinite(magnitude)) {
                finite = false;
                break;
            }
            residual = std::max(residual, magnitude);
        }
        if (!finite) {
            // Diverged into overflow. Cap the reported residual so the
            // report stays serializable, and stop burning the step budget.
            residual = std::numeric_limits<double>::max();
            break;
        }
        if (progress && cfg.report_interval > 0 && applied % cfg.report_interval == 0) {
            progress(applied, residual, static_cast<double>(applied) * dt);
        }
        if (residual <= cfg.steady_tolerance) {
            converged = true;
            break;
        }
        if (applied >= cfg.max_steps) {
            break;
        }
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(threads)
#endif
        for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
            ps.temperature[static_cast<std::size_t>(i)] += dt * rate[static_cast<std::size_t>(i)];
        }
        ++applied;
    }
    if (progress) {
        progress(applied, residual, static_cast<double>(applied) * dt);
    }

    SteadyState state;
    state.temperatures = ps.temperature;
    state.steps_taken = applied;
    state.final_residual = residual;
    state.converged = converged;
    return state;
}

} // namespace framesph::solver
