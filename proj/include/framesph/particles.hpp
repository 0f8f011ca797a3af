#pragma once

#include <cstdint>
#include <vector>

#include "framesph/geometry.hpp"

namespace framesph::particles {

struct ResolutionSpec {
    double dp = 0.001;     // particle spacing, m
    double h_over_dp = 1.3; // smoothing length / spacing
};

enum class KernelFamily { quintic_spline, wendland_c2 };

std::string to_string(KernelFamily f);
KernelFamily kernel_family_from_string(const std::string &name);

// Support radius as a multiple of h: 3 for the quintic spline, 2 for Wendland C2.
double support_multiple(KernelFamily f);

struct KernelSpec {
    double smoothing_length = 0.0; // h, m
    double support_radius = 0.0;   // cutoff, m
    KernelFamily family = KernelFamily::quintic_spline;

    static KernelSpec for_resolution(const ResolutionSpec &res,
                                     KernelFamily family = KernelFamily::quintic_spline);
};

// 2D-normalized kernel value; zero outside the support.
double kernel_value(double r, const KernelSpec &spec);
// Radial derivative dW/dr; <= 0 on the support, 0 at the support radius.
// Throws a particles Error for r <= 0 or r > support_radius.
double kernel_derivative(double r, const KernelSpec &spec);

struct Neighbor {
    std::uint32_t index = 0;
    double distance = 0.0; // |r_i - r_j|
    double dwdr = 0.0;     // dW/dr at that distance
};

struct ParticleSet {
    std::vector<geometry::Point2> position;
    std::vector<double> volume;       // m² per unit z-length
    std::vector<double> conductivity; // W/(m·K)
    std::vector<double> temperature;  // °C

    std::vector<std::int32_t> face;   // index into faces, -1 = no boundary face
    std::vector<double> face_distance;
    std::vector<geometry::BoundaryFace> faces;

    KernelSpec kernel;

    // CSR neighbor lists, sorted by neighbor index.
    std::vector<std::size_t> neighbor_offset; // size() + 1 entries
    std::vector<Neighbor> neighbors;

    // Per-particle surface measure S_i (1/m) of the tagged face, and the
    // resulting coupling conductance S_i / (R_face + face_distance/k_i).
    std::vector<double> surface_weight;
    std::vector<double> boundary_conductance;

    std::size_t size() const { return position.size(); }

    std::size_t neighbor_count(std::size_t i) const {
        return neighbor_offset[i + 1] - neighbor_offset[i];
    }
};

// Fills a square lattice of spacing res.dp over the profile. Fully ventilated
// cavities must already be resolved. Throws a particles Error when a region
// is thinner than 2·dp or captures no lattice site.
ParticleSet generate_particles(const geometry::ProfileSpec &profile, const ResolutionSpec &res,
                               KernelFamily family = KernelFamily::quintic_spline);

// Builds symmetric neighbor lists via a uniform background grid with cell
// size equal to the support radius, caches r_ij and dW/dr, and derives the
// boundary-face surface weights.
ParticleSet build_neighborhoods(ParticleSet ps, const KernelSpec &spec);

} // namespace framesph::particles
