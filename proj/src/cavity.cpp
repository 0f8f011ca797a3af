#include "framesph/cavity.hpp"

#include <cmath>

#include "framesph/error.hpp"

namespace framesph::cavity {

namespace {

void require_positive(double v, const char *what) {
    if (!(v > 0.0)) {
        throw Error("cavity", std::string(what) + " must be positive");
    }
}

} // namespace

std::string to_string(VentilationClass c) {
    switch (c) {
    case VentilationClass::unventilated: return "unventilated";
    case VentilationClass::slightly_ventilated: return "slightly-ventilated";
    case VentilationClass::fully_ventilated: return "fully-ventilated";
    }
    return "?";
}

VentilationClass classify_ventilation(double gap_width) {
    if (gap_width < 0.0) {
        throw Error("cavity", "gap width must be non-negative");
    }
    if (gap_width <= 0.002) {
        return VentilationClass::unventilated;
    }
    if (gap_width <= 0.010) {
        return VentilationClass::slightly_ventilated;
    }
    return VentilationClass::fully_ventilated;
}

Rectangle equivalent_rectangle(double area, double depth_extent, double width_extent) {
    require_positive(area, "cavity area");
    require_positive(depth_extent, "cavity depth extent");
    require_positive(width_extent, "cavity width extent");
    Rectangle r;
    r.width_b = std::sqrt(area * width_extent / depth_extent);
    r.depth_d = std::sqrt(area * depth_extent / width_extent);
    return r;
}

double convective_coefficient(double depth_d, double width_b, const CavityConstants &c) {
    require_positive(depth_d, "cavity depth");
    require_positive(width_b, "cavity width");
    const double conduction_like = c.c1 / depth_d;
    if (width_b <= 0.005) {
        return conduction_like;
    }
    return std::max(conduction_like, c.c3);
}

double radiative_coefficient(double depth_d, double width_b, const CavityConstants &c) {
    require_positive(depth_d, "cavity depth");
    require_positive(width_b, "cavity width");
    const double aspect = depth_d / width_b;
    return c.c4 * (1.0 + std::sqrt(1.0 + aspect * aspect) - aspect);
}

CavityEvaluation equivalent_conductivity(const CavitySpec &spec, const CavityConstants &c) {
    CavityEvaluation eval;
    eval.ventilation = classify_ventilation(spec.gap_width);

    if (const auto *rect = std::get_if<Rectangle>(&spec.geometry)) {
        require_positive(rect->width_b, "cavity width");
        require_positive(rect->depth_d, "cavity depth");
        eval.rectangle = *rect;
    } else {
        const auto &poly = std::get<PolygonSummary>(spec.geometry);
        if (poly.area > poly.depth_extent * poly.width_extent + 1e-12) {
            throw Error("cavity", "cavity '" + spec.name + "': area exceeds its bounding extents");
        }
        eval.rectangle = equivalent_rectangle(poly.area, poly.depth_extent, poly.width_extent);
    }

    if (eval.ventilation == VentilationClass::fully_ventilated) {
        return eval; // walls become boundary faces; no conductivity
    }

    eval.h_a = convective_coefficient(eval.rectangle.depth_d, eval.rectangle.width_b, c);
    eval.h_r = radiative_coefficient(eval.rectangle.depth_d, eval.rectangle.width_b, c);
    eval.resistance = 1.0 / (eval.h_a + eval.h_r);

    double k_eq = eval.rectangle.depth_d * (eval.h_a + eval.h_r);
    if (eval.ventilation == VentilationClass::slightly_ventilated) {
        k_eq = 2.0 * k_eq;
    }
    eval.k_eq = k_eq;
    return eval;
}

} // namespace framesph::cavity
