#pragma once

#include <optional>
#include <string>
#include <variant>

namespace framesph::cavity {

enum class VentilationClass { unventilated, slightly_ventilated, fully_ventilated };

std::string to_string(VentilationClass c);

// Rectangular cavity: d is the dimension in the heat-flow direction, b the
// transverse width.
struct Rectangle {
    double width_b = 0.0;
    double depth_d = 0.0;
};

// Non-rectangular cavity reduced to its area and bounding extents (A', d', b').
struct PolygonSummary {
    double area = 0.0;
    double depth_extent = 0.0;
    double width_extent = 0.0;
};

struct CavitySpec {
    std::string name;
    std::variant<Rectangle, PolygonSummary> geometry;
    double gap_width = 0.0; // connection to the outside; 0 = fully closed
    // "internal" / "external"; required only for fully ventilated cavities.
    std::optional<std::string> ventilates_to;
};

struct CavityConstants {
    double c1 = 0.025; // W/(m·K)
    double c3 = 1.57;  // W/(m²·K)
    double c4 = 2.11;  // W/(m²·K)
};

struct CavityEvaluation {
    VentilationClass ventilation = VentilationClass::unventilated;
    Rectangle rectangle;             // equivalent rectangle actually used
    double h_a = 0.0;                // convective coefficient, W/(m²·K)
    double h_r = 0.0;                // radiative coefficient, W/(m²·K)
    double resistance = 0.0;         // 1/(h_a + h_r), m²·K/W
    std::optional<double> k_eq;      // empty = fully ventilated (walls become surfaces)
};

VentilationClass classify_ventilation(double gap_width);

// Converts (A', d', b') into the rectangle with the same area and aspect ratio.
Rectangle equivalent_rectangle(double area, double depth_extent, double width_extent);

double convective_coefficient(double depth_d, double width_b, const CavityConstants &c = {});
double radiative_coefficient(double depth_d, double width_b, const CavityConstants &c = {});

CavityEvaluation equivalent_conductivity(const CavitySpec &spec, const CavityConstants &c = {});

} // namespace framesph::cavity
