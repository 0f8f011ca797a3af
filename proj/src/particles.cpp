#include "framesph/particles.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "framesph/error.hpp"

namespace framesph::particles {

namespace {

using geometry::BoundaryFace;
using geometry::Point2;

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

std::uint64_t cell_key(long ix, long iy) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(ix)) << 32) |
           static_cast<std::uint64_t>(static_cast<std::uint32_t>(iy));
}

} // namespace

ParticleSet generate_particles(const geometry::ProfileSpec &profile, const ResolutionSpec &res,
                               KernelFamily family) {
    const KernelSpec kernel = KernelSpec::for_resolution(res, family);
    const double dp = res.dp;

    if (profile.regions.empty()) {
        throw Error("particles", "profile has no regions");
    }
    for (const auto &region : profile.regions) {
        if (region.material_index < 0) {
            throw Error("particles", "region '" + region.name +
                                         "' is an unresolved cavity; run resolve_cavities first");
        }
        const double width = geometry::min_feature_width(region.polygon);
        if (width < 2.0 * dp - geometry::coincidence_tolerance) {
            throw Error("particles", "region '" + region.name + "' is unresolved at dp = " +
                                         std::to_string(dp) + " (minimum feature width " +
                                         std::to_string(width) + " < 2*dp)");
        }
    }

    double min_x = profile.regions[0].polygon[0].x;
    double min_y = profile.regions[0].polygon[0].y;
    double max_x = min_x;
    double max_y = min_y;
    for (const auto &region : profile.regions) {
        for (const auto &p : region.polygon) {
            min_x = std::min(min_x, p.x);
            max_x = std::max(max_x, p.x);
            min_y = std::min(min_y, p.y);
            max_y = std::max(max_y, p.y);
        }
    }

    double initial_temperature = 0.0;
    {
        bool any = false;
        double lo = 0.0, hi = 0.0;
        for (const auto &face : profile.boundary) {
            if (!face.ambient) continue;
            if (!any) {
                lo = hi = *face.ambient;
                any = true;
            } else {
                lo = std::min(lo, *face.ambient);
                hi = std::max(hi, *face.ambient);
            }
        }
        if (any) initial_temperature = 0.5 * (lo + hi);
    }

    ParticleSet ps;
    ps.kernel = kernel;
    ps.faces = profile.boundary;

    const long nx = static_cast<long>(std::ceil((max_x - min_x) / dp - 1e-9));
    const long ny = static_cast<long>(std::ceil((max_y - min_y) / dp - 1e-9));
    std::vector<std::size_t> region_count(profile.regions.size(), 0);

    for (long ix = 0; ix < nx; ++ix) {
        for (long iy = 0; iy < ny; ++iy) {
            const Point2 center{min_x + (static_cast<double>(ix) + 0.5) * dp,
                                min_y + (static_cast<double>(iy) + 0.5) * dp};
            int hit = -1;
            for (std::size_t r = 0; r < profile.regions.size(); ++r) {
                if (geometry::point_in_polygon(profile.regions[r].polygon, center)) {
                    hit = static_cast<int>(r);
                    break; // first-declared region wins on shared edges
                }
            }
            if (hit < 0) continue;
            ++region_count[static_cast<std::size_t>(hit)];
            ps.position.push_back(center);
            ps.volume.push_back(dp * dp);
            const auto &region = profile.regions[static_cast<std::size_t>(hit)];
            ps.conductivity.push_back(
                profile.materials[static_cast<std::size_t>(region.material_index)].conductivity);
            ps.temperature.push_back(initial_temperature);
        }
    }
    for (std::size_t r = 0; r < profile.regions.size(); ++r) {
        if (region_count[r] == 0) {
            throw Error("particles", "region '" + profile.regions[r].name +
                                         "' captured no lattice site at dp = " + std::to_string(dp));
        }
    }

    // Boundary tagging: nearest face within the support radius; ties go to
    // the first-declared face.
    const std::size_t n = ps.size();
    ps.face.assign(n, -1);
    ps.face_distance.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double best = kernel.support_radius + geometry::coincidence_tolerance;
        int chosen = -1;
        for (std::size_t f = 0; f < ps.faces.size(); ++f) {
            const double d = geometry::distance_to_segment(ps.position[i], ps.faces[f].a,
                                                           ps.faces[f].b);
            if (d < best - geometry::coincidence_tolerance) {
                best = d;
                chosen = static_cast<int>(f);
            }
        }
        ps.face[i] = chosen;
        ps.face_distance[i] = chosen >= 0 ? best : 0.0;
    }
    return ps;
}

ParticleSet build_neighborhoods(ParticleSet ps, const KernelSpec &spec) {
    ps.kernel = spec;
    const std::size_t n = ps.size();
    const double cutoff = spec.support_radius;

    double min_x = 0.0, min_y = 0.0;
    if (n > 0) {
        min_x = ps.position[0].x;
        min_y = ps.position[0].y;
        for (const auto &p : ps.position) {
            min_x = std::min(min_x, p.x);
            min_y = std::min(min_y, p.y);
        }
    }
    auto cell_of = [&](geometry::Point2 p) {
        return std::pair<long, long>{static_cast<long>(std::floor((p.x - min_x) / cutoff)),
                                     static_cast<long>(std::floor((p.y - min_y) / cutoff))};
    };
    std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> grid;
    grid.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto [cx, cy] = cell_of(ps.position[i]);
        grid[cell_key(cx, cy)].push_back(static_cast<std::uint32_t>(i));
    }

    ps.neighbor_offset.assign(n + 1, 0);
    ps.neighbors.clear();
    std::vector<std::uint32_t> candidates;
    for (std::size_t i = 0; i < n; ++i) {
        candidates.clear();
        const auto [cx, cy] = cell_of(ps.position[i]);
        for (long dx = -1; dx <= 1; ++dx) {
            for (long dy = -1; dy <= 1; ++dy) {
                const auto it = grid.find(cell_key(cx + dx, cy + dy));
                if (it == grid.end()) continue;
                for (std::uint32_t j : it->second) {
                    if (j != i) candidates.push_back(j);
                }
            }
        }
        std::sort(candidates.begin(), candidates.end());
        for (std::uint32_t j : candidates) {
            const double ddx = ps.position[i].x - ps.position[j].x;
            const double ddy = ps.position[i].y - ps.position[j].y;
            const double r = std::sqrt(ddx * ddx + ddy * ddy);
            if (r > cutoff) continue;
            if (r < 1e-12) {
                throw Error("particles", "coincident particles " + std::to_string(i) + " and " +
                                             std::to_string(j));
            }
            ps.neighbors.push_back({j, r, kernel_derivative(r, spec)});
        }
        ps.neighbor_offset[i + 1] = ps.neighbors.size();
    }

    // Surface measure of each boundary-tagged particle: the kernel-truncation
    // residual projected on the face's outward normal. Pairs aligned with the
    // outward normal contribute with positive weight; a full symmetric
    // neighborhood cancels to zero, so the measure vanishes away from the
    // surface. The factor 2 makes the band integral of the measure equal 1
    // for a plane surface.
    ps.surface_weight.assign(n, 0.0);
    ps.boundary_conductance.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const std::int32_t f = ps.face[i];
        if (f < 0) continue;
        const BoundaryFace &face = ps.faces[static_cast<std::size_t>(f)];
        if (face.kind == geometry::FaceKind::adiabatic) continue;
        const Point2 nrm = face.outward_normal;
        KahanSum acc;
        for (std::size_t e = ps.neighbor_offset[i]; e < ps.neighbor_offset[i + 1]; ++e) {
            const Neighbor &nb = ps.neighbors[e];
            const Point2 sep = ps.position[i] - ps.position[nb.index];
            const double aligned = (sep.x * nrm.x + sep.y * nrm.y) / nb.distance;
            acc.add(-2.0 * ps.volume[nb.index] * aligned * nb.dwdr);
        }
        ps.surface_weight[i] = std::max(acc.sum, 0.0);
    }

    // Normalize per face so the total conductance of a face is exactly
    // h times its length, then fold in the conduction path from the surface
    // to the particle's depth.
    std::vector<KahanSum> face_total(ps.faces.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (ps.face[i] >= 0) {
            face_total[static_cast<std::size_t>(ps.face[i])].add(ps.volume[i] *
                                                                 ps.surface_weight[i]);
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        const std::int32_t f = ps.face[i];
        if (f < 0 || ps.surface_weight[i] <= 0.0) continue;
        const BoundaryFace &face = ps.faces[static_cast<std::size_t>(f)];
        if (face.kind == geometry::FaceKind::adiabatic) continue;
        const double total = face_total[static_cast<std::size_t>(f)].sum;
        if (total > 1e-30) {
            ps.surface_weight[i] *= face.length() / total;
        }
        const double coupling_resistance =
            *face.surface_resistance + ps.face_distance[i] / ps.conductivity[i];
        ps.boundary_conductance[i] = ps.surface_weight[i] / coupling_resistance;
    }
    return ps;
}

} // namespace framesph::particles
