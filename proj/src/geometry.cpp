#include "framesph/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <map>
#include <sstream>

#include "framesph/error.hpp"

namespace framesph::geometry {

namespace {

constexpr double tol = coincidence_tolerance;

double norm(Point2 p) { return std::hypot(p.x, p.y); }

bool points_equal(Point2 a, Point2 b) {
    return std::abs(a.x - b.x) <= tol && std::abs(a.y - b.y) <= tol;
}

std::string fmt_point(Point2 p) {
    std::ostringstream os;
    os << "(" << p.x << ", " << p.y << ")";
    return os.str();
}

// Signed distance of p from the line through a-b would be cross/(len); we
// compare the cross product against tol scaled by the segment length so the
// test is "within tol metres of the line".
bool on_line(Point2 p, Point2 a, Point2 b, double len) {
    return std::abs(cross(b - a, p - a)) <= tol * std::max(len, tol);
}

// Parameter of the projection of p onto the a-b line, in units of the
// segment (0 at a, 1 at b).
double line_param(Point2 p, Point2 a, Point2 b) {
    const Point2 d = b - a;
    return dot(p - a, d) / dot(d, d);
}

int orient_sign(Point2 a, Point2 b, Point2 c) {
    const double v = cross(b - a, c - a);
    const double scale = std::max(norm(b - a), tol);
    if (v > tol * scale) return 1;
    if (v < -tol * scale) return -1;
    return 0;
}

bool within_segment_box(Point2 p, Point2 a, Point2 b) {
    return p.x >= std::min(a.x, b.x) - tol && p.x <= std::max(a.x, b.x) + tol &&
           p.y >= std::min(a.y, b.y) - tol && p.y <= std::max(a.y, b.y) + tol;
}

// True when the closed segments share at least one point.
bool segments_intersect(Point2 p1, Point2 p2, Point2 q1, Point2 q2) {
    const int d1 = orient_sign(q1, q2, p1);
    const int d2 = orient_sign(q1, q2, p2);
    const int d3 = orient_sign(p1, p2, q1);
    const int d4 = orient_sign(p1, p2, q2);
    if (d1 * d2 < 0 && d3 * d4 < 0) return true;
    if (d1 == 0 && within_segment_box(p1, q1, q2)) return true;
    if (d2 == 0 && within_segment_box(p2, q1, q2)) return true;
    if (d3 == 0 && within_segment_box(q1, p1, p2)) return true;
    if (d4 == 0 && within_segment_box(q2, p1, p2)) return true;
    return false;
}

double segment_segment_distance(Point2 p1, Point2 p2, Point2 q1, Point2 q2) {
    if (segments_intersect(p1, p2, q1, q2)) return 0.0;
    return std::min(std::min(distance_to_segment(p1, q1, q2), distance_to_segment(p2, q1, q2)),
                    std::min(distance_to_segment(q1, p1, p2), distance_to_segment(q2, p1, p2)));
}

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};

std::vector<Interval> merge_intervals(std::vector<Interval> v, double eps) {
    std::sort(v.begin(), v.end(), [](const Interval &a, const Interval &b) { return a.lo < b.lo; });
    std::vector<Interval> out;
    for (const auto &iv : v) {
        if (iv.hi - iv.lo <= eps) continue;
        if (!out.empty() && iv.lo <= out.back().hi + eps) {
            out.back().hi = std::max(out.back().hi, iv.hi);
        } else {
            out.push_back(iv);
        }
    }
    return out;
}

bool point_in_triangle(Point2 p, Point2 a, Point2 b, Point2 c) {
    const int s1 = orient_sign(a, b, p);
    const int s2 = orient_sign(b, c, p);
    const int s3 = orient_sign(c, a, p);
    return s1 >= 0 && s2 >= 0 && s3 >= 0;
}

Polygon normalized_ccw(Polygon poly) {
    if (signed_area(poly) < 0.0) {
        std::reverse(poly.begin(), poly.end());
    }
    return poly;
}

Point2 outward_normal_of(Point2 a, Point2 b) {
    const Point2 d = b - a;
    const double len = norm(d);
    return {d.y / len, -d.x / len}; // right of the CCW direction
}

// Collinear overlap of segment (c,d) with (a,b), as an interval in the
// parameterisation of (a,b). Returns false when not collinear or the overlap
// has no length.
bool collinear_overlap(Point2 a, Point2 b, Point2 c, Point2 d, Interval &out, bool &same_direction) {
    const double len = norm(b - a);
    if (!on_line(c, a, b, len) || !on_line(d, a, b, len)) return false;
    double t_c = line_param(c, a, b);
    double t_d = line_param(d, a, b);
    same_direction = t_d > t_c;
    const double lo = std::max(0.0, std::min(t_c, t_d));
    const double hi = std::min(1.0, std::max(t_c, t_d));
    if (hi - lo <= tol / std::max(len, tol)) return false;
    out = {lo, hi};
    return true;
}

struct Analysis {
    std::vector<std::string> violations;
    std::vector<Point2> face_normals;
    std::vector<bool> face_bound;
};

void check_polygon_shape(const RegionSpec &region, std::vector<std::string> &violations) {
    const Polygon &poly = region.polygon;
    const std::size_t n = poly.size();
    if (n < 3) {
        violations.push_back("region '" + region.name + "': polygon needs at least 3 vertices");
        return;
    }
    for (const Point2 &p : poly) {
        if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
            violations.push_back("region '" + region.name + "': non-finite vertex");
            return;
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (points_equal(poly[i], poly[(i + 1) % n])) {
            violations.push_back("region '" + region.name + "': zero-length edge at vertex " +
                                 std::to_string(i));
            return;
        }
    }
    if (std::abs(signed_area(poly)) <= tol * tol) {
        violations.push_back("region '" + region.name + "': polygon has zero area");
        return;
    }
    for (std::size_t i = 0; i < n; ++i) {
        const Point2 a1 = poly[i];
        const Point2 a2 = poly[(i + 1) % n];
        for (std::size_t j = i + 1; j < n; ++j) {
            const bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
            const Point2 b1 = poly[j];
            const Point2 b2 = poly[(j + 1) % n];
            if (adjacent) {
                // A spike folds an edge back over its neighbour.
                Interval iv;
                bool same;
                if (collinear_overlap(a1, a2, b1, b2, iv, same)) {
                    violations.push_back("region '" + region.name +
                                         "': polygon folds back on itself at vertex " +
                                         std::to_string(j));
                }
                continue;
            }
            if (segments_intersect(a1, a2, b1, b2)) {
                violations.push_back("region '" + region.name + "': polygon self-intersects (edges " +
                                     std::to_string(i) + " and " + std::to_string(j) + ")");
                return;
            }
        }
    }
}

void check_region_pair(const RegionSpec &ra, const RegionSpec &rb,
                       std::vector<std::string> &violations) {
    const Polygon &pa = ra.polygon;
    const Polygon &pb = rb.polygon;
    for (std::size_t i = 0; i < pa.size(); ++i) {
        const Point2 a1 = pa[i];
        const Point2 a2 = pa[(i + 1) % pa.size()];
        for (std::size_t j = 0; j < pb.size(); ++j) {
            const Point2 b1 = pb[j];
            const Point2 b2 = pb[(j + 1) % pb.size()];
            const int d1 = orient_sign(b1, b2, a1);
            const int d2 = orient_sign(b1, b2, a2);
            const int d3 = orient_sign(a1, a2, b1);
            const int d4 = orient_sign(a1, a2, b2);
            if (d1 * d2 < 0 && d3 * d4 < 0) {
                violations.push_back("regions '" + ra.name + "' and '" + rb.name +
                                     "' overlap (crossing edges)");
                return;
            }
            Interval iv;
            bool same = false;
            if (collinear_overlap(a1, a2, b1, b2, iv, same) && same) {
                violations.push_back("regions '" + ra.name + "' and '" + rb.name +
                                     "' overlap (identically oriented shared edge)");
                return;
            }
        }
    }
    const Point2 inner_a = interior_point(pa);
    const Point2 inner_b = interior_point(pb);
    if (point_in_polygon(pb, inner_a) && !point_on_polygon_boundary(pb, inner_a)) {
        violations.push_back("regions '" + ra.name + "' and '" + rb.name +
                             "' overlap ('" + ra.name + "' lies inside '" + rb.name + "')");
        return;
    }
    if (point_in_polygon(pa, inner_b) && !point_on_polygon_boundary(pa, inner_b)) {
        violations.push_back("regions '" + ra.name + "' and '" + rb.name +
                             "' overlap ('" + rb.name + "' lies inside '" + ra.name + "')");
    }
}

Analysis analyze(const ProfileSpec &profile) {
    Analysis an;
    an.face_normals.assign(profile.boundary.size(), Point2{});
    an.face_bound.assign(profile.boundary.size(), false);
    auto &violations = an.violations;

    for (std::size_t m = 0; m < profile.materials.size(); ++m) {
        if (!(profile.materials[m].conductivity > 0.0)) {
            violations.push_back("material '" + profile.materials[m].name +
                                 "': conductivity must be positive");
        }
    }
    for (const auto &face : profile.boundary) {
        if (points_equal(face.a, face.b)) {
            violations.push_back("boundary face at " + fmt_point(face.a) + " has zero length");
        }
        const bool adiabatic = face.kind == FaceKind::adiabatic;
        if (adiabatic && (face.surface_resistance || face.ambient)) {
            violations.push_back("adiabatic face at " + fmt_point(face.a) +
                                 " must not carry resistance or ambient temperature");
        }
        if (!adiabatic) {
            if (!face.surface_resistance || !face.ambient) {
                violations.push_back("convective face at " + fmt_point(face.a) +
                                     " needs surface resistance and ambient temperature");
            } else if (!(*face.surface_resistance > 0.0)) {
                violations.push_back("convective face at " + fmt_point(face.a) +
                                     " has non-positive surface resistance");
            }
        }
    }

    if (profile.regions.empty()) {
        violations.push_back("profile declares no regions");
        return an;
    }
    for (const auto &region : profile.regions) {
        check_polygon_shape(region, violations);
        if (region.material_index < 0 && region.cavity_index < 0) {
            violations.push_back("region '" + region.name + "' has neither material nor cavity");
        }
        if (region.material_index >= static_cast<int>(profile.materials.size()) ||
            region.cavity_index >= static_cast<int>(profile.cavities.size())) {
            violations.push_back("region '" + region.name + "' references out of range");
        }
    }
    if (!violations.empty()) {
        return an; // shape violations make the structural checks meaningless
    }

    for (std::size_t i = 0; i < profile.regions.size(); ++i) {
        for (std::size_t j = i + 1; j < profile.regions.size(); ++j) {
            check_region_pair(profile.regions[i], profile.regions[j], violations);
        }
    }

    // Region adjacency (anti-parallel collinear contact) for connectivity.
    const std::size_t nr = profile.regions.size();
    std::vector<std::vector<std::size_t>> adjacent(nr);
    for (std::size_t i = 0; i < nr; ++i) {
        for (std::size_t j = i + 1; j < nr; ++j) {
            bool touch = false;
            const Polygon &pa = profile.regions[i].polygon;
            const Polygon &pb = profile.regions[j].polygon;
            for (std::size_t e = 0; e < pa.size() && !touch; ++e) {
                for (std::size_t f = 0; f < pb.size() && !touch; ++f) {
                    Interval iv;
                    bool same = false;
                    if (collinear_overlap(pa[e], pa[(e + 1) % pa.size()], pb[f],
                                          pb[(f + 1) % pb.size()], iv, same) &&
                        !same) {
                        touch = true;
                    }
                }
            }
            if (touch) {
                adjacent[i].push_back(j);
                adjacent[j].push_back(i);
            }
        }
    }
    std::vector<bool> reached(nr, false);
    std::deque<std::size_t> queue{0};
    reached[0] = true;
    while (!queue.empty()) {
        const std::size_t r = queue.front();
        queue.pop_front();
        for (std::size_t nb : adjacent[r]) {
            if (!reached[nb]) {
                reached[nb] = true;
                queue.push_back(nb);
            }
        }
    }
    for (std::size_t r = 0; r < nr; ++r) {
        if (!reached[r]) {
            violations.push_back("region '" + profile.regions[r].name +
                                 "' is disconnected from region '" + profile.regions[0].name + "'");
        }
    }

    // Exterior edges: the parts of region edges not shared with another
    // region. Each must be covered by exactly one boundary face.
    for (std::size_t r = 0; r < nr; ++r) {
        const Polygon &poly = profile.regions[r].polygon;
        for (std::size_t e = 0; e < poly.size(); ++e) {
            const Point2 a = poly[e];
            const Point2 b = poly[(e + 1) % poly.size()];
            const double len = norm(b - a);
            const double eps_t = tol / len;

            std::vector<Interval> shared;
            for (std::size_t r2 = 0; r2 < nr; ++r2) {
                if (r2 == r) continue;
                const Polygon &other = profile.regions[r2].polygon;
                for (std::size_t f = 0; f < other.size(); ++f) {
                    Interval iv;
                    bool same = false;
                    if (collinear_overlap(a, b, other[f], other[(f + 1) % other.size()], iv,
                                          same) &&
                        !same) {
                        shared.push_back(iv);
                    }
                }
            }
            shared = merge_intervals(std::move(shared), eps_t);

            std::vector<Interval> exterior;
            double cursor = 0.0;
            for (const auto &iv : shared) {
                if (iv.lo > cursor + eps_t) exterior.push_back({cursor, iv.lo});
                cursor = std::max(cursor, iv.hi);
            }
            if (cursor < 1.0 - eps_t) exterior.push_back({cursor, 1.0});

            // Face coverage of each exterior piece.
            struct Cover {
                Interval iv;
                std::size_t face;
            };
            std::vector<Cover> covers;
            for (std::size_t g = 0; g < profile.boundary.size(); ++g) {
                const auto &face = profile.boundary[g];
                Interval iv;
                bool same = false;
                if (collinear_overlap(a, b, face.a, face.b, iv, same)) {
                    covers.push_back({iv, g});
                    an.face_bound[g] = true;
                    const Point2 nrm = outward_normal_of(a, b);
                    if (norm(an.face_normals[g]) > 0.5 && dot(an.face_normals[g], nrm) < 0.9) {
                        violations.push_back("boundary face at " + fmt_point(face.a) +
                                             " covers oppositely oriented edges");
                    }
                    an.face_normals[g] = nrm;
                    for (const auto &sh : shared) {
                        const double lo = std::max(iv.lo, sh.lo);
                        const double hi = std::min(iv.hi, sh.hi);
                        if (hi - lo > eps_t) {
                            violations.push_back("boundary face at " + fmt_point(face.a) +
                                                 " overlaps the interior interface of region '" +
                                                 profile.regions[r].name + "'");
                        }
                    }
                }
            }
            std::sort(covers.begin(), covers.end(),
                      [](const Cover &x, const Cover &y) { return x.iv.lo < y.iv.lo; });
            for (std::size_t c = 1; c < covers.size(); ++c) {
                if (covers[c].iv.lo < covers[c - 1].iv.hi - eps_t) {
                    violations.push_back("edge " + std::to_string(e) + " of region '" +
                                         profile.regions[r].name +
                                         "' is covered by more than one boundary face");
                }
            }
            for (const auto &piece : exterior) {
                double pos = piece.lo;
                for (const auto &c : covers) {
                    if (c.iv.hi <= pos + eps_t) continue;
                    if (c.iv.lo > pos + eps_t) break;
                    pos = std::max(pos, c.iv.hi);
                }
                if (pos < piece.hi - eps_t) {
                    violations.push_back("edge " + std::to_string(e) + " of region '" +
                                         profile.regions[r].name +
                                         "' has no boundary face between t=" +
                                         std::to_string(std::max(pos, piece.lo)) + " and t=" +
                                         std::to_string(piece.hi));
                }
            }
        }
    }

    for (std::size_t g = 0; g < profile.boundary.size(); ++g) {
        if (!an.face_bound[g] && !profile.boundary[g].synthetic) {
            violations.push_back("boundary face at " + fmt_point(profile.boundary[g].a) +
                                 " lies on no exterior edge");
        }
    }
    return an;
}

} // namespace

double BoundaryFace::length() const { return norm(b - a); }

std::string to_string(FaceKind k) {
    switch (k) {
    case FaceKind::internal_convection: return "internal";
    case FaceKind::external_convection: return "external";
    case FaceKind::adiabatic: return "adiabatic";
    }
    return "?";
}

double signed_area(const Polygon &poly) {
    double acc = 0.0;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const Point2 a = poly[i];
        const Point2 b = poly[(i + 1) % poly.size()];
        acc += cross(a, b);
    }
    return 0.5 * acc;
}

double polygon_perimeter(const Polygon &poly) {
    double acc = 0.0;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        acc += norm(poly[(i + 1) % poly.size()] - poly[i]);
    }
    return acc;
}

double distance_to_segment(Point2 p, Point2 a, Point2 b) {
    const Point2 d = b - a;
    const double len2 = dot(d, d);
    if (len2 <= tol * tol) return norm(p - a);
    const double t = std::clamp(dot(p - a, d) / len2, 0.0, 1.0);
    return norm(p - (a + t * d));
}

bool point_on_polygon_boundary(const Polygon &poly, Point2 p) {
    for (std::size_t i = 0; i < poly.size(); ++i) {
        if (distance_to_segment(p, poly[i], poly[(i + 1) % poly.size()]) <= tol) return true;
    }
    return false;
}

bool point_in_polygon(const Polygon &poly, Point2 p) {
    if (point_on_polygon_boundary(poly, p)) return true;
    bool inside = false;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const Point2 a = poly[i];
        const Point2 b = poly[(i + 1) % poly.size()];
        if ((a.y > p.y) != (b.y > p.y)) {
            const double x_cross = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
            if (p.x < x_cross) inside = !inside;
        }
    }
    return inside;
}

Point2 interior_point(const Polygon &input) {
    const Polygon poly = normalized_ccw(input);
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point2 a = poly[(i + n - 1) % n];
        const Point2 b = poly[i];
        const Point2 c = poly[(i + 1) % n];
        if (orient_sign(a, b, c) <= 0) continue; // reflex or flat corner
        bool blocked = false;
        for (std::size_t j = 0; j < n && !blocked; ++j) {
            if (j == i || j == (i + n - 1) % n || j == (i + 1) % n) continue;
            if (point_in_triangle(poly[j], a, b, c)) blocked = true;
        }
        if (!blocked) {
            return {(a.x + b.x + c.x) / 3.0, (a.y + b.y + c.y) / 3.0};
        }
    }
    // Unreachable for a simple polygon (it always has an ear).
    return poly.front();
}

double min_feature_width(const Polygon &poly) {
    const std::size_t n = poly.size();
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        const Point2 a1 = poly[i];
        const Point2 a2 = poly[(i + 1) % n];
        for (std::size_t j = i + 1; j < n; ++j) {
            const bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
            if (adjacent) continue;
            best = std::min(best, segment_segment_distance(a1, a2, poly[j], poly[(j + 1) % n]));
        }
        for (std::size_t v = 0; v < n; ++v) {
            if (v == i || v == (i + 1) % n) continue;
            best = std::min(best, distance_to_segment(poly[v], a1, a2));
        }
    }
    return best;
}

std::vector<std::string> validate_profile(const ProfileSpec &profile) {
    ProfileSpec copy = profile;
    for (auto &region : copy.regions) {
        region.polygon = normalized_ccw(region.polygon);
    }
    return analyze(copy).violations;
}

void finalize_profile(ProfileSpec &profile) {
    for (auto &region : profile.regions) {
        region.polygon = normalized_ccw(region.polygon);
    }
    const Analysis an = analyze(profile);
    if (!an.violations.empty()) {
        std::string joined;
        for (const auto &v : an.violations) {
            if (!joined.empty()) joined += "; ";
            joined += v;
        }
        throw Error("geometry", joined);
    }
    for (std::size_t g = 0; g < profile.boundary.size(); ++g) {
        if (an.face_bound[g]) {
            profile.boundary[g].outward_normal = an.face_normals[g];
        }
    }
}

std::optional<Material> material_at(const ProfileSpec &profile, Point2 p) {
    for (const auto &region : profile.regions) {
        if (point_in_polygon(region.polygon, p)) {
            if (region.material_index < 0) {
                throw Error("geometry", "region '" + region.name +
                                            "' references an unresolved cavity; call resolve_cavities first");
            }
            return profile.materials[static_cast<std::size_t>(region.material_index)];
        }
    }
    return std::nullopt;
}

ProfileSpec resolve_cavities(const ProfileSpec &profile, const cavity::CavityConstants &constants) {
    ProfileSpec out = profile;
    out.regions.clear();

    auto material_index_for = [&out](const Material &m) {
        for (std::size_t i = 0; i < out.materials.size(); ++i) {
            if (out.materials[i].name == m.name) return static_cast<int>(i);
        }
        out.materials.push_back(m);
        return static_cast<int>(out.materials.size() - 1);
    };

    auto side_ambient = [&profile](FaceKind kind, const std::string &cavity_name) {
        std::optional<double> ambient;
        for (const auto &face : profile.boundary) {
            if (face.kind != kind || !face.ambient) continue;
            if (ambient && std::abs(*ambient - *face.ambient) > 1e-12) {
                throw Error("geometry", "cavity '" + cavity_name + "': the " + to_string(kind) +
                                            " side has more than one ambient temperature");
            }
            ambient = *face.ambient;
        }
        if (!ambient) {
            throw Error("geometry", "cavity '" + cavity_name + "': no " + to_string(kind) +
                                        " convective face supplies an ambient temperature");
        }
        return *ambient;
    };

    for (const auto &region : profile.regions) {
        if (region.cavity_index < 0) {
            out.regions.push_back(region);
            continue;
        }
        const auto &spec = profile.cavities[static_cast<std::size_t>(region.cavity_index)];
        const cavity::CavityEvaluation eval = cavity::equivalent_conductivity(spec, constants);
        if (eval.k_eq) {
            RegionSpec resolved = region;
            resolved.material_index = material_index_for({"cavity:" + spec.name, *eval.k_eq});
            out.regions.push_back(resolved);
            continue;
        }

        // Fully ventilated: the walls become a developed surface of the side
        // the cavity opens to; the region itself vanishes.
        if (!spec.ventilates_to) {
            throw Error("geometry", "fully-ventilated cavity '" + spec.name +
                                        "' must declare ventilates_to");
        }
        FaceKind kind;
        double resistance;
        if (*spec.ventilates_to == "internal") {
            kind = FaceKind::internal_convection;
            resistance = internal_plane_resistance;
        } else if (*spec.ventilates_to == "external") {
            kind = FaceKind::external_convection;
            resistance = external_plane_resistance;
        } else {
            throw Error("geometry", "cavity '" + spec.name + "': ventilates_to must be 'internal' or 'external'");
        }
        const double ambient = side_ambient(kind, spec.name);
        const Polygon poly = normalized_ccw(region.polygon);
        for (std::size_t i = 0; i < poly.size(); ++i) {
            BoundaryFace face;
            face.a = poly[i];
            face.b = poly[(i + 1) % poly.size()];
            face.kind = kind;
            face.surface_resistance = resistance;
            face.ambient = ambient;
            face.synthetic = true;
            // The void is on the left of the CCW cavity wall; the material
            // side's outward normal points into the void.
            const Point2 d = face.b - face.a;
            const double len = norm(d);
            face.outward_normal = {-d.y / len, d.x / len};
            out.boundary.push_back(face);
        }
    }
    return out;
}

ProfileSpec apply_corner_rule(const ProfileSpec &profile) {
    ProfileSpec out = profile;
    if (profile.junctions.empty()) {
        return out;
    }

    const auto &faces = profile.boundary;
    std::vector<std::vector<Interval>> zones(faces.size());

    struct WalkState {
        std::size_t face;
        double start;  // arc position within the face
        int direction; // +1 toward face.b, -1 toward face.a
        double budget;
    };

    auto face_len = [&faces](std::size_t f) { return faces[f].length(); };
    auto is_internal = [&faces](std::size_t f) {
        return faces[f].kind == FaceKind::internal_convection;
    };

    for (const auto &junction : profile.junctions) {
        const double zone = std::min(junction.depth, corner_zone_max_extent);
        std::vector<WalkState> stack;
        for (std::size_t f = 0; f < faces.size(); ++f) {
            if (!is_internal(f)) continue;
            if (distance_to_segment(junction.point, faces[f].a, faces[f].b) <= tol) {
                const double t = std::clamp(line_param(junction.point, faces[f].a, faces[f].b),
                                            0.0, 1.0) * face_len(f);
                stack.push_back({f, t, +1, zone});
                stack.push_back({f, t, -1, zone});
            }
        }
        if (stack.empty()) {
            throw Error("geometry", "junction at " + fmt_point(junction.point) +
                                        " does not lie on an internal-convection face");
        }

        // Budgets only shrink along a walk, so bounded revisits terminate.
        std::map<std::pair<std::size_t, int>, double> seen;
        while (!stack.empty()) {
            const WalkState st = stack.back();
            stack.pop_back();
            auto key = std::make_pair(st.face, st.direction);
            auto it = seen.find(key);
            if (it != seen.end() && st.budget <= it->second + tol) continue;
            seen[key] = st.budget;

            const double len = face_len(st.face);
            const double avail = st.direction > 0 ? len - st.start : st.start;
            const double take = std::min(avail, st.budget);
            if (take > tol) {
                if (st.direction > 0) {
                    zones[st.face].push_back({st.start, st.start + take});
                } else {
                    zones[st.face].push_back({st.start - take, st.start});
                }
            }
            const double remaining = st.budget - take;
            if (remaining <= tol) continue;
            const Point2 end = st.direction > 0 ? faces[st.face].b : faces[st.face].a;
            for (std::size_t g = 0; g < faces.size(); ++g) {
                if (g == st.face || !is_internal(g)) continue;
                if (points_equal(faces[g].a, end)) {
                    stack.push_back({g, 0.0, +1, remaining});
                } else if (points_equal(faces[g].b, end)) {
                    stack.push_back({g, face_len(g), -1, remaining});
                }
            }
        }
    }

    std::vector<BoundaryFace> rebuilt;
    for (std::size_t f = 0; f < faces.size(); ++f) {
        const BoundaryFace &face = faces[f];
        const double len = face.length();
        auto merged = merge_intervals(std::move(zones[f]), tol);
        if (merged.empty()) {
            rebuilt.push_back(face);
            continue;
        }
        std::vector<double> cuts{0.0};
        for (const auto &iv : merged) {
            cuts.push_back(std::clamp(iv.lo, 0.0, len));
            cuts.push_back(std::clamp(iv.hi, 0.0, len));
        }
        cuts.push_back(len);
        std::sort(cuts.begin(), cuts.end());
        cuts.erase(std::unique(cuts.begin(), cuts.end(),
                               [](double a, double b) { return std::abs(a - b) <= tol; }),
                   cuts.end());
        const Point2 dir = {(face.b.x - face.a.x) / len, (face.b.y - face.a.y) / len};
        for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
            const double mid = 0.5 * (cuts[c] + cuts[c + 1]);
            const bool in_zone = std::any_of(merged.begin(), merged.end(), [mid](const Interval &iv) {
                return mid >= iv.lo && mid <= iv.hi;
            });
            BoundaryFace part = face;
            part.a = face.a + cuts[c] * dir;
            part.b = face.a + cuts[c + 1] * dir;
            if (c + 2 == cuts.size()) part.b = face.b; // keep endpoints exact
            if (c == 0) part.a = face.a;
            if (in_zone) {
                part.surface_resistance = corner_zone_resistance;
                part.corner_zone = true;
            }
            rebuilt.push_back(part);
        }
    }
    out.boundary = std::move(rebuilt);
    return out;
}

} // namespace framesph::geometry
