#pragma once

#include <optional>
#include <string>
#include <vector>

#include "framesph/cavity.hpp"

namespace framesph::geometry {

struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator*(double s, Point2 p) { return {s * p.x, s * p.y}; }
inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }

using Polygon = std::vector<Point2>;

// Coordinates are metres; coincidence tests use this absolute tolerance.
inline constexpr double coincidence_tolerance = 1e-9;

// Surface resistances from the standard table, m²·K/W.
inline constexpr double internal_plane_resistance = 0.13;
inline constexpr double external_plane_resistance = 0.04;
inline constexpr double corner_zone_resistance = 0.20;
inline constexpr double corner_zone_max_extent = 0.030; // m

struct Material {
    std::string name;
    double conductivity = 0.0; // W/(m·K)
};

enum class FaceKind { internal_convection, external_convection, adiabatic };

std::string to_string(FaceKind k);

struct BoundaryFace {
    Point2 a;
    Point2 b;
    FaceKind kind = FaceKind::adiabatic;
    std::optional<double> surface_resistance; // m²·K/W, absent for adiabatic
    std::optional<double> ambient;            // °C, absent for adiabatic
    bool corner_zone = false;
    bool synthetic = false;   // created by fully-ventilated cavity conversion
    Point2 outward_normal{};  // unit vector, set when the profile is finalized

    double length() const;
};

struct Junction {
    Point2 point;
    double depth = 0.0; // declared depth d; zone extent is min(d, 30 mm)
};

struct PanelParams {
    double u_p = 0.0; // W/(m²·K)
    double b_p = 0.0; // m
    double b_f = 0.0; // m
};

struct RegionSpec {
    std::string name;
    Polygon polygon;        // simple, stored counterclockwise
    int material_index = -1; // into ProfileSpec::materials, -1 if unresolved cavity
    int cavity_index = -1;   // into ProfileSpec::cavities, -1 for plain material
};

struct ProfileSpec {
    std::vector<Material> materials;
    std::vector<cavity::CavitySpec> cavities;
    std::vector<RegionSpec> regions;
    std::vector<BoundaryFace> boundary;
    std::vector<Junction> junctions;
    std::optional<PanelParams> panel;
    std::optional<std::string> reference_case;
};

// Polygon utilities shared with the particles module and the tests.
double signed_area(const Polygon &poly);
double polygon_perimeter(const Polygon &poly);
bool point_in_polygon(const Polygon &poly, Point2 p);          // boundary-inclusive
bool point_on_polygon_boundary(const Polygon &poly, Point2 p); // within tolerance
Point2 interior_point(const Polygon &poly);
double distance_to_segment(Point2 p, Point2 a, Point2 b);
// Smallest gap between non-adjacent boundary edges; the resolution guard.
double min_feature_width(const Polygon &poly);

// Parses the profile document (see the format reference in the README),
// binds material/cavity references, validates, and assigns face normals.
ProfileSpec load_profile(const std::string &text);
ProfileSpec load_profile_file(const std::string &path);

// Checks every ProfileSpec invariant; returns human-readable violations
// (empty = valid) instead of throwing.
std::vector<std::string> validate_profile(const ProfileSpec &profile);

// Validates and assigns outward normals to the boundary faces. Throws a
// geometry Error when validate_profile would report violations. Needed only
// for profiles built in code; load_profile already finalizes.
void finalize_profile(ProfileSpec &profile);

std::optional<Material> material_at(const ProfileSpec &profile, Point2 p);

// Replaces cavity placeholders: unventilated and slightly ventilated cavity
// regions get their equivalent material; fully ventilated cavity regions are
// removed and their walls become convective boundary faces of the declared
// ventilation side.
ProfileSpec resolve_cavities(const ProfileSpec &profile, const cavity::CavityConstants &c = {});

// Splits internal-convection faces around declared reentrant junctions and
// raises the surface resistance to 0.20 within arc length min(d, 30 mm).
ProfileSpec apply_corner_rule(const ProfileSpec &profile);

} // namespace framesph::geometry
