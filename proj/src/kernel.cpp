#include <cmath>
#include <numbers>

#include "framesph/error.hpp"
#include "framesph/particles.hpp"

namespace framesph::particles {

namespace {

double clamped_pow5(double v) { return v > 0.0 ? v * v * v * v * v : 0.0; }
double clamped_pow4(double v) { return v > 0.0 ? (v * v) * (v * v) : 0.0; }

} // namespace

std::string to_string(KernelFamily f) {
    switch (f) {
    case KernelFamily::quintic_spline: return "quintic_spline";
    case KernelFamily::wendland_c2: return "wendland_c2";
    }
    return "?";
}

KernelFamily kernel_family_from_string(const std::string &name) {
    if (name == "quintic_spline") return KernelFamily::quintic_spline;
    if (name == "wendland_c2") return KernelFamily::wendland_c2;
    throw Error("particles", "unknown kernel family '" + name + "'");
}

double support_multiple(KernelFamily f) {
    return f == KernelFamily::quintic_spline ? 3.0 : 2.0;
}

KernelSpec KernelSpec::for_resolution(const ResolutionSpec &res, KernelFamily family) {
    if (!(res.dp > 0.0)) {
        throw Error("particles", "particle spacing must be positive");
    }
    if (!(res.h_over_dp >= 1.0)) {
        throw Error("particles", "h/dp must be at least 1");
    }
    KernelSpec spec;
    spec.family = family;
    spec.smoothing_length = res.h_over_dp * res.dp;
    spec.support_radius = support_multiple(family) * spec.smoothing_length;
    return spec;
}

double kernel_value(double r, const KernelSpec &spec) {
    if (r < 0.0 || r > spec.support_radius) return 0.0;
    const double h = spec.smoothing_length;
    const double q = r / h;
    if (spec.family == KernelFamily::quintic_spline) {
        const double sigma = 7.0 / (478.0 * std::numbers::pi * h * h);
        return sigma * (clamped_pow5(3.0 - q) - 6.0 * clamped_pow5(2.0 - q) +
                        15.0 * clamped_pow5(1.0 - q));
    }
    const double alpha = 7.0 / (4.0 * std::numbers::pi * h * h);
    const double half = 1.0 - 0.5 * q;
    return alpha * clamped_pow4(half) * (1.0 + 2.0 * q);
}

double kernel_derivative(double r, const KernelSpec &spec) {
    if (!(r > 0.0)) {
        throw Error("particles", "kernel derivative needs r > 0");
    }
    if (r > spec.support_radius) {
        throw Error("particles", "kernel derivative evaluated outside the support");
    }
    const double h = spec.smoothing_length;
    const double q = r / h;
    if (spec.family == KernelFamily::quintic_spline) {
        const double sigma = 7.0 / (478.0 * std::numbers::pi * h * h);
        return -5.0 * (sigma / h) *
               (clamped_pow4(3.0 - q) - 6.0 * clamped_pow4(2.0 - q) + 15.0 * clamped_pow4(1.0 - q));
    }
    const double alpha = 7.0 / (4.0 * std::numbers::pi * h * h);
    const double qm2 = q - 2.0;
    return (alpha / h) * 0.625 * q * qm2 * qm2 * qm2;
}

} // namespace framesph::particles
