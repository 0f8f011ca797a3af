#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "framesph/particles.hpp"
#include "framesph/solver.hpp"

namespace framesph::report {

enum class Side { internal, external };

// ISO tolerance bands: conductance within ±3%, transmittance within ±5%.
inline constexpr double l2d_band = 0.03;
inline constexpr double uf_band = 0.05;
inline constexpr double flux_balance_band = 0.01;

struct ReferenceCase {
    std::string name;
    double l2d_ref = 0.0; // W/(m·K)
    double uf_ref = 0.0;  // W/(m²·K)
    double u_p = 0.0;     // W/(m²·K)
    double b_p = 0.0;     // m
    double b_f = 0.0;     // m
};

const std::vector<ReferenceCase> &reference_cases();
std::optional<ReferenceCase> find_reference_case(const std::string &name);

// Boundary heat flow of one side, W/m; positive when heat enters the frame on
// the internal side and leaves it on the external side. Throws a report Error
// if the particle set has no convective faces on that side.
double heat_flow_rate(const particles::ParticleSet &ps, Side side);

// |Q| / |T_i - T_e|. Throws on equal ambient temperatures.
double thermal_conductance(double q, double t_internal, double t_external);

double thermal_transmittance(double l2d, double u_p, double b_p, double b_f);
double thermal_transmittance(double l2d, const ReferenceCase &ref);

struct QuantityCheck {
    std::string name;
    double computed = 0.0;
    double reference = 0.0;
    double relative_error = 0.0; // (computed - reference) / reference
    bool pass = false;

    bool operator==(const QuantityCheck &) const = default;
};

struct SteadyStateReport {
    double q_internal = 0.0;     // W/m
    double q_external = 0.0;     // W/m
    double flux_imbalance = 0.0; // |Qi - Qe| / max(|Qi|, |Qe|)
    double l2d = 0.0;            // W/(m·K)
    std::optional<double> uf;    // W/(m²·K), needs panel parameters
    std::optional<std::string> reference;
    std::vector<QuantityCheck> checks;
    bool all_pass = true;
    bool converged = false;
    std::int64_t steps = 0;
    double final_residual = 0.0;

    bool operator==(const SteadyStateReport &) const = default;
};

// Relative errors and pass flags of L²ᴰ (±3%) and, when present, U_f (±5%).
std::vector<QuantityCheck> band_checks(double l2d, std::optional<double> uf,
                                       const ReferenceCase &ref);

// Assembles the full report from a converged state: both heat flows, L²ᴰ,
// U_f when panel parameters are available, and the reference comparison when
// the profile names a reference case.
SteadyStateReport make_report(const particles::ParticleSet &ps, const solver::SteadyState &state,
                              const geometry::ProfileSpec &profile);

std::string to_text(const SteadyStateReport &r);
std::string to_json(const SteadyStateReport &r);
SteadyStateReport report_from_json(const std::string &text);

} // namespace framesph::report
