#pragma once

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "framesph/particles.hpp"
#include "framesph/solver.hpp"

namespace test_helpers {

inline std::string fixture(const std::string &name) {
    return std::string(FRAMESPH_FIXTURES_DIR) + "/" + name;
}

// Bare insulated lattice (no boundary faces) for solver-level tests.
inline framesph::particles::ParticleSet
make_lattice(int nx, int ny, double dp, double conductivity, double temperature = 0.0,
             framesph::particles::KernelFamily family =
                 framesph::particles::KernelFamily::quintic_spline) {
    using namespace framesph::particles;
    ParticleSet ps;
    ps.kernel = KernelSpec::for_resolution({dp, 1.3}, family);
    for (int ix = 0; ix < nx; ++ix) {
        for (int iy = 0; iy < ny; ++iy) {
            ps.position.push_back({(ix + 0.5) * dp, (iy + 0.5) * dp});
            ps.volume.push_back(dp * dp);
            ps.conductivity.push_back(conductivity);
            ps.temperature.push_back(temperature);
        }
    }
    ps.face.assign(ps.size(), -1);
    ps.face_distance.assign(ps.size(), 0.0);
    const KernelSpec spec = ps.kernel;
    return build_neighborhoods(std::move(ps), spec);
}

// O(n²) all-pairs oracle for the grid-based neighbor search.
inline framesph::particles::ParticleSet
brute_force_neighborhoods(framesph::particles::ParticleSet ps,
                          const framesph::particles::KernelSpec &spec) {
    using namespace framesph::particles;
    ps.kernel = spec;
    const std::size_t n = ps.size();
    ps.neighbor_offset.assign(n + 1, 0);
    ps.neighbors.clear();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            const double dx = ps.position[i].x - ps.position[j].x;
            const double dy = ps.position[i].y - ps.position[j].y;
            const double r = std::sqrt(dx * dx + dy * dy);
            if (r > spec.support_radius) continue;
            ps.neighbors.push_back({static_cast<std::uint32_t>(j), r, kernel_derivative(r, spec)});
        }
        ps.neighbor_offset[i + 1] = ps.neighbors.size();
    }
    return ps;
}

// Random particle cloud with a minimum separation, so kernel derivatives are
// well defined for every admitted pair.
inline std::vector<framesph::geometry::Point2> random_cloud(std::mt19937 &rng, std::size_t count,
                                                            double box, double min_sep) {
    std::uniform_real_distribution<double> uni(0.0, box);
    std::vector<framesph::geometry::Point2> points;
    while (points.size() < count) {
        const framesph::geometry::Point2 p{uni(rng), uni(rng)};
        bool ok = true;
        for (const auto &q : points) {
            if (std::hypot(p.x - q.x, p.y - q.y) < min_sep) {
                ok = false;
                break;
            }
        }
        if (ok) points.push_back(p);
    }
    return points;
}

} // namespace test_helpers
