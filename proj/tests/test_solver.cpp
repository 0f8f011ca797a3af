#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "framesph/error.hpp"
#include "framesph/pipeline.hpp"
#include "framesph/solver.hpp"
#include "test_helpers.hpp"

using namespace framesph;
using namespace framesph::particles;
using namespace framesph::solver;

TEST_CASE("effective conductivity of a material pair") {
    CHECK(effective_conductivity(0.13, 0.13) == doctest::Approx(0.26).epsilon(1e-15));
    // Aluminium against insulation: the low-conductivity side dominates.
    CHECK(effective_conductivity(160.0, 0.035) == doctest::Approx(0.1399694).epsilon(1e-6));
    CHECK_THROWS_AS(effective_conductivity(0.0, 1.0), Error);
    CHECK_THROWS_AS(effective_conductivity(1.0, -2.0), Error);

    std::mt19937 rng(5);
    std::uniform_real_distribution<double> uni(1e-3, 1e3);
    for (int trial = 0; trial < 2000; ++trial) {
        const double a = uni(rng);
        const double b = uni(rng);
        CHECK(effective_conductivity(a, b) == effective_conductivity(b, a));
        CHECK(effective_conductivity(a, b) <= 4.0 * std::min(a, b) * (1.0 + 1e-15));
    }
}

TEST_CASE("conduction rate vanishes on a uniform field") {
    ParticleSet ps = test_helpers::make_lattice(8, 8, 0.001, 0.13, 7.5);
    for (std::size_t i = 0; i < ps.size(); ++i) {
        CHECK(conduction_rate(ps, i) == 0.0);
    }
}

TEST_CASE("an isolated pair exchanges heat antisymmetrically") {
    ParticleSet ps;
    ps.kernel = KernelSpec::for_resolution({0.001, 1.3});
    ps.position = {{0, 0}, {0.001, 0}};
    ps.volume = {1e-6, 1e-6};
    ps.conductivity = {0.13, 0.13};
    ps.temperature = {12.0, 8.0};
    ps.face = {-1, -1};
    ps.face_distance = {0, 0};
    const KernelSpec spec_copy = ps.kernel;
    ps = build_neighborhoods(std::move(ps), spec_copy);

    const double rate_hot = conduction_rate(ps, 0);
    const double rate_cold = conduction_rate(ps, 1);
    CHECK(rate_hot < 0.0);
    CHECK(rate_cold > 0.0);
    CHECK(rate_hot == -rate_cold); // equal volumes: exact pairwise antisymmetry
}

TEST_CASE("a linear field is discretely harmonic in the interior") {
    const double dp = 0.001;
    const double slope = 1000.0; // K/m
    ParticleSet ps = test_helpers::make_lattice(15, 15, dp, 0.13);
    for (std::size_t i = 0; i < ps.size(); ++i) {
        ps.temperature[i] = slope * ps.position[i].x;
    }
    std::size_t center = 0;
    double best = 1e9;
    for (std::size_t i = 0; i < ps.size(); ++i) {
        const double d = std::hypot(ps.position[i].x - 7.5 * dp, ps.position[i].y - 7.5 * dp);
        if (d < best) {
            best = d;
            center = i;
        }
    }
    CHECK(std::abs(conduction_rate(ps, center)) <= 1e-6 * slope);
}

TEST_CASE("convection rate is zero without a boundary face") {
    ParticleSet ps = test_helpers::make_lattice(5, 5, 0.001, 0.13, 3.0);
    for (std::size_t i = 0; i < ps.size(); ++i) {
        CHECK(convection_rate(ps, i) == 0.0);
    }
}

TEST_CASE("convection rate is zero at the ambient temperature") {
    pipeline::RunConfig cfg;
    cfg.input_path = test_helpers::fixture("slab.json");
    const auto profile = geometry::load_profile_file(cfg.input_path);
    ParticleSet ps = pipeline::prepare_particles(profile, cfg);
    bool saw_internal = false;
    for (std::size_t i = 0; i < ps.size(); ++i) {
        if (ps.face[i] < 0) continue;
        const auto &face = ps.faces[static_cast<std::size_t>(ps.face[i])];
        if (!face.ambient) continue;
        ps.temperature[i] = *face.ambient;
        CHECK(convection_rate(ps, i) == 0.0);
        ps.temperature[i] = *face.ambient - 1.0;
        if (ps.boundary_conductance[i] > 0.0) {
            CHECK(convection_rate(ps, i) > 0.0); // drives back toward the ambient
            saw_internal = true;
        }
    }
    CHECK(saw_internal);
}

TEST_CASE("stability step follows 0.5 h^2 / k_max") {
    ParticleSet ps = test_helpers::make_lattice(3, 3, 0.001, 160.0);
    KernelSpec spec = ps.kernel;
    spec.smoothing_length = 0.0013;
    SolverConfig cfg;
    const double dt = stable_dt(ps, spec, cfg);
    CHECK(std::abs(dt - 5.28125e-9) <= 1e-15 * 5.28125e-9);

    ParticleSet wood = test_helpers::make_lattice(3, 3, 0.001, 0.13);
    CHECK(stable_dt(wood, spec, cfg) == doctest::Approx(6.5e-6).epsilon(1e-12));

    // Doubling h quadruples the step exactly.
    KernelSpec doubled = spec;
    doubled.smoothing_length = 2.0 * spec.smoothing_length;
    CHECK(stable_dt(ps, doubled, cfg) == 4.0 * stable_dt(ps, spec, cfg));

    cfg.dt_safety = 0.5;
    CHECK(stable_dt(ps, spec, cfg) == 0.5 * dt);
}

TEST_CASE("step is the identity for dt = 0 and on uniform fields") {
    ParticleSet ps = test_helpers::make_lattice(6, 6, 0.001, 0.13, 4.2);
    const std::vector<double> before = ps.temperature;

    const ParticleSet after_zero = step(ps, 0.0);
    CHECK(after_zero.temperature == before);

    const double dt = stable_dt(ps, ps.kernel, {});
    const ParticleSet after = step(ps, dt);
    CHECK(after.temperature == before); // uniform insulated field is a fixed point
}

TEST_CASE("two-particle step moves temperatures together and conserves T*V") {
    ParticleSet ps;
    ps.kernel = KernelSpec::for_resolution({0.001, 1.3});
    ps.position = {{0, 0}, {0.001, 0}};
    ps.volume = {1e-6, 1e-6};
    ps.conductivity = {0.13, 0.13};
    ps.temperature = {12.0, 8.0};
    ps.face = {-1, -1};
    ps.face_distance = {0, 0};
    const KernelSpec spec_copy = ps.kernel;
    ps = build_neighborhoods(std::move(ps), spec_copy);

    const double dt = stable_dt(ps, ps.kernel, {});
    const ParticleSet next = step(ps, dt);
    CHECK(next.temperature[0] < 12.0);
    CHECK(next.temperature[1] > 8.0);
    CHECK(next.temperature[0] > next.temperature[1]); // no overshoot at the stable step
    const double before = 12.0 * 1e-6 + 8.0 * 1e-6;
    const double after = next.temperature[0] * 1e-6 + next.temperature[1] * 1e-6;
    CHECK(after == doctest::Approx(before).epsilon(1e-14));
}

TEST_CASE("run_to_steady on an already steady field needs no steps") {
    ParticleSet ps = test_helpers::make_lattice(6, 6, 0.001, 0.13, 9.0);
    const SteadyState state = run_to_steady(ps, {});
    CHECK(state.converged);
    CHECK(state.steps_taken == 0);
    CHECK(state.final_residual == 0.0);
}

TEST_CASE("run_to_steady reports non-convergence at the step cap") {
    ParticleSet ps = test_helpers::make_lattice(6, 6, 0.001, 0.13);
    for (std::size_t i = 0; i < ps.size(); ++i) {
        ps.temperature[i] = ps.position[i].x > 0.003 ? 20.0 : 0.0;
    }
    SolverConfig cfg;
    cfg.max_steps = 1;
    const SteadyState state = run_to_steady(ps, cfg);
    CHECK_FALSE(state.converged);
    CHECK(state.steps_taken == 1);
    CHECK(state.final_residual > cfg.steady_tolerance);
}

TEST_CASE("insulated energy is conserved over a thousand steps") {
    ParticleSet ps = test_helpers::make_lattice(20, 20, 0.001, 0.13);
    for (std::size_t i = 0; i < ps.size(); ++i) {
        ps.temperature[i] = 10.0 + 8.0 * std::sin(4000.0 * ps.position[i].x) *
                                       std::cos(3000.0 * ps.position[i].y);
    }
    auto energy = [&ps] {
        double acc = 0.0;
        for (std::size_t i = 0; i < ps.size(); ++i) acc += ps.temperature[i] * ps.volume[i];
        return acc;
    };
    const double before = energy();
    const double dt = stable_dt(ps, ps.kernel, {});
    for (int s = 0; s < 1000; ++s) {
        ps = step(std::move(ps), dt);
    }
    CHECK(std::abs(energy() - before) <= 1e-10 * std::abs(before));
}

TEST_CASE("residual sequences are identical across thread counts") {
    auto run_with_threads = [](int threads) {
        pipeline::RunConfig cfg;
        cfg.input_path = test_helpers::fixture("slab.json");
        const auto profile = geometry::load_profile_file(cfg.input_path);
        ParticleSet ps = pipeline::prepare_particles(profile, cfg);
        SolverConfig sc;
        sc.threads = threads;
        sc.max_steps = 300;
        sc.report_interval = 1;
        std::vector<double> residuals;
        run_to_steady(ps, sc, [&](std::int64_t, double r, double) { residuals.push_back(r); });
        return std::make_pair(residuals, ps.temperature);
    };
    const auto [r1, t1] = run_with_threads(1);
    const auto [r4, t4] = run_with_threads(4);
    CHECK(r1 == r4); // bitwise
    CHECK(t1 == t4);
}

TEST_CASE("converged slab respects the discrete maximum principle") {
    pipeline::RunConfig cfg;
    cfg.input_path = test_helpers::fixture("slab.json");
    const auto result = pipeline::run_simulation(cfg);
    CHECK(result.steady.converged);
    for (const double t : result.steady.temperatures) {
        CHECK(t >= -1e-6);
        CHECK(t <= 20.0 + 1e-6);
    }
}

TEST_CASE("a diverging run stops early instead of reporting convergence") {
    // Wendland C2 at the full stability step amplifies the lattice
    // checkerboard; the solver must notice the overflow and bail out.
    pipeline::RunConfig cfg;
    cfg.input_path = test_helpers::fixture("slab.json");
    cfg.kernel = "wendland_c2";
    const auto profile = geometry::load_profile_file(cfg.input_path);
    ParticleSet ps = pipeline::prepare_particles(profile, cfg);
    for (std::size_t i = 0; i < ps.size(); ++i) {
        ps.temperature[i] += 1e-12 * static_cast<double>(i % 7); // seed all modes
    }
    SolverConfig sc;
    sc.max_steps = 50000;
    const SteadyState state = run_to_steady(ps, sc);
    CHECK_FALSE(state.converged);
    CHECK(state.steps_taken < 5000); // bailed out at overflow, far below the cap
    CHECK(state.final_residual == std::numeric_limits<double>::max());

    // At half the step the same kernel integrates stably.
    ParticleSet stable = pipeline::prepare_particles(profile, cfg);
    SolverConfig half;
    half.dt_safety = 0.5;
    const SteadyState ok = run_to_steady(stable, half);
    CHECK(ok.converged);
}

TEST_CASE("residual does not increase after the initial transient") {
    pipeline::RunConfig cfg;
    cfg.input_path = test_helpers::fixture("slab.json");
    const auto profile = geometry::load_profile_file(cfg.input_path);
    ParticleSet ps = pipeline::prepare_particles(profile, cfg);
    SolverConfig sc;
    sc.report_interval = 25;
    std::vector<double> residuals;
    run_to_steady(ps, sc, [&](std::int64_t, double r, double) { residuals.push_back(r); });
    REQUIRE(residuals.size() > 20);
    const std::size_t start = residuals.size() / 10;
    for (std::size_t i = start + 1; i < residuals.size(); ++i) {
        CHECK(residuals[i] <= residuals[i - 1] * (1.0 + 1e-12));
    }
}
