#include "framesph/report.hpp"

#include <cmath>
#include <sstream>

#include <json.hpp>

#include "framesph/error.hpp"

namespace framesph::report {

namespace {

using geometry::FaceKind;
using json = nlohmann::ordered_json;

FaceKind kind_of(Side side) {
    return side == Side::internal ? FaceKind::internal_convection : FaceKind::external_convection;
}

const char *name_of(Side side) { return side == Side::internal ? "internal" : "external"; }

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

double side_ambient(const particles::ParticleSet &ps, Side side) {
    std::optional<double> ambient;
    for (const auto &face : ps.faces) {
        if (face.kind != kind_of(side) || !face.ambient) continue;
        if (ambient && std::abs(*ambient - *face.ambient) > 1e-12) {
            throw Error("report", std::string("the ") + name_of(side) +
                                      " side has more than one ambient temperature");
        }
        ambient = *face.ambient;
    }
    if (!ambient) {
        throw Error("report", std::string("no convective faces on the ") + name_of(side) + " side");
    }
    return *ambient;
}

} // namespace

const std::vector<ReferenceCase> &reference_cases() {
    static const std::vector<ReferenceCase> cases = {
        {"D2", 0.263, 1.44, 0.551, 0.19, 0.11},
        {"D4", 0.346, 1.36, 1.034, 0.19, 0.11},
        {"D7", 0.285, 1.31, 1.169, 0.19, 0.048},
    };
    return cases;
}

std::optional<ReferenceCase> find_reference_case(const std::string &name) {
    for (const auto &c : reference_cases()) {
        if (c.name == name) return c;
    }
    return std::nullopt;
}

double heat_flow_rate(const particles::ParticleSet &ps, Side side) {
    const FaceKind kind = kind_of(side);
    bool any_face = false;
    for (const auto &face : ps.faces) {
        if (face.kind == kind) {
            any_face = true;
            break;
        }
    }
    if (!any_face) {
        throw Error("report", std::string("no convective faces on the ") + name_of(side) + " side");
    }
    KahanSum q;
    for (std::size_t i = 0; i < ps.size(); ++i) {
        const std::int32_t f = ps.face[i];
        if (f < 0) continue;
        const auto &face = ps.faces[static_cast<std::size_t>(f)];
        if (face.kind != kind) continue;
        if (ps.boundary_conductance[i] <= 0.0) continue;
        q.add(ps.volume[i] * ps.boundary_conductance[i] * (*face.ambient - ps.temperature[i]));
    }
    // Positive = entering the frame on the internal side, leaving on the
    // external side.
    return side == Side::internal ? q.sum : -q.sum;
}

double thermal_conductance(double q, double t_internal, double t_external) {
    if (t_internal == t_external) {
        throw Error("report", "ambient temperatures are equal; conductance is undefined");
    }
    return std::abs(q) / std::abs(t_internal - t_external);
}

double thermal_transmittance(double l2d, double u_p, double b_p, double b_f) {
    if (!(b_f > 0.0)) {
        throw Error("report", "frame width b_f must be positive");
    }
    return (l2d - u_p * b_p) / b_f;
}

double thermal_transmittance(double l2d, const ReferenceCase &ref) {
    return thermal_transmittance(l2d, ref.u_p, ref.b_p, ref.b_f);
}

std::vector<QuantityCheck> band_checks(double l2d, std::optional<double> uf,
                                       const ReferenceCase &ref) {
    std::vector<QuantityCheck> checks;
    {
        QuantityCheck c;
        c.name = "L2D";
        c.computed = l2d;
        c.reference = ref.l2d_ref;
        c.relative_error = (l2d - ref.l2d_ref) / ref.l2d_ref;
        c.pass = std::abs(c.relative_error) <= l2d_band;
        checks.push_back(c);
    }
    if (uf) {
        QuantityCheck c;
        c.name = "Uf";
        c.computed = *uf;
        c.reference = ref.uf_ref;
        c.relative_error = (*uf - ref.uf_ref) / ref.uf_ref;
        c.pass = std::abs(c.relative_error) <= uf_band;
        checks.push_back(c);
    }
    return checks;
}

SteadyStateReport make_report(const particles::ParticleSet &ps, const solver::SteadyState &state,
                              const geometry::ProfileSpec &profile) {
    SteadyStateReport r;
    r.converged = state.converged;
    r.steps = state.steps_taken;
    r.final_residual = state.final_residual;

    r.q_internal = heat_flow_rate(ps, Side::internal);
    r.q_external = heat_flow_rate(ps, Side::external);
    const double q_max = std::max(std::abs(r.q_internal), std::abs(r.q_external));
    r.flux_imbalance = q_max > 0.0 ? std::abs(r.q_internal - r.q_external) / q_max : 0.0;

    const double t_internal = side_ambient(ps, Side::internal);
    const double t_external = side_ambient(ps, Side::external);
    const double q_mean = 0.5 * (std::abs(r.q_internal) + std::abs(r.q_external));
    r.l2d = thermal_conductance(q_mean, t_internal, t_external);

    std::optional<ReferenceCase> ref;
    if (profile.reference_case) {
        ref = find_reference_case(*profile.reference_case);
        if (!ref) {
            throw Error("report", "unknown reference case '" + *profile.reference_case + "'");
        }
        r.reference = ref->name;
    }

    std::optional<geometry::PanelParams> panel = profile.panel;
    if (!panel && ref) {
        panel = geometry::PanelParams{ref->u_p, ref->b_p, ref->b_f};
    }
    if (panel) {
        r.uf = thermal_transmittance(r.l2d, panel->u_p, panel->b_p, panel->b_f);
    }
    if (ref) {
        r.checks = band_checks(r.l2d, r.uf, *ref);
        for (const auto &c : r.checks) {
            r.all_pass = r.all_pass && c.pass;
        }
    }
    return r;
}

std::string to_text(const SteadyStateReport &r) {
    std::ostringstream os;
    os.precision(6);
    os << "steady state: " << (r.converged ? "converged" : "NOT CONVERGED") << " after "
       << r.steps << " steps (residual " << r.final_residual << " K/t)\n";
    os << "Q internal   " << r.q_internal << " W/m\n";
    os << "Q external   " << r.q_external << " W/m\n";
    os << "imbalance    " << 100.0 * r.flux_imbalance << " %\n";
    os << "L2D          " << r.l2d << " W/(m*K)\n";
    if (r.uf) {
        os << "Uf           " << *r.uf << " W/(m2*K)\n";
    }
    if (r.reference) {
        os << "reference    " << *r.reference << "\n";
        for (const auto &c : r.checks) {
            os << "  " << c.name << ": computed " << c.computed << " vs " << c.reference << "  ("
               << 100.0 * c.relative_error << " %)  " << (c.pass ? "pass" : "FAIL") << "\n";
        }
        os << "result       " << (r.all_pass ? "PASS" : "FAIL") << "\n";
    }
    return os.str();
}

std::string to_json(const SteadyStateReport &r) {
    json doc;
    doc["reference"] = r.reference ? json(*r.reference) : json(nullptr);
    doc["q_internal"] = r.q_internal;
    doc["q_external"] = r.q_external;
    doc["flux_imbalance"] = r.flux_imbalance;
    doc["l2d"] = r.l2d;
    doc["uf"] = r.uf ? json(*r.uf) : json(nullptr);
    doc["converged"] = r.converged;
    doc["steps"] = r.steps;
    doc["final_residual"] = r.final_residual;
    doc["checks"] = json::array();
    for (const auto &c : r.checks) {
        json entry;
        entry["name"] = c.name;
        entry["computed"] = c.computed;
        entry["reference"] = c.reference;
        entry["relative_error"] = c.relative_error;
        entry["pass"] = c.pass;
        doc["checks"].push_back(entry);
    }
    doc["all_pass"] = r.all_pass;
    return doc.dump(2) + "\n";
}

SteadyStateReport report_from_json(const std::string &text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception &e) {
        throw Error("report", std::string("report parse error: ") + e.what());
    }
    SteadyStateReport r;
    if (!doc.at("reference").is_null()) r.reference = doc.at("reference").get<std::string>();
    r.q_internal = doc.at("q_internal").get<double>();
    r.q_external = doc.at("q_external").get<double>();
    r.flux_imbalance = doc.at("flux_imbalance").get<double>();
    r.l2d = doc.at("l2d").get<double>();
    if (!doc.at("uf").is_null()) r.uf = doc.at("uf").get<double>();
    r.converged = doc.at("converged").get<bool>();
    r.steps = doc.at("steps").get<std::int64_t>();
    r.final_residual = doc.at("final_residual").get<double>();
    for (const auto &entry : doc.at("checks")) {
        QuantityCheck c;
        c.name = entry.at("name").get<std::string>();
        c.computed = entry.at("computed").get<double>();
        c.reference = entry.at("reference").get<double>();
        c.relative_error = entry.at("relative_error").get<double>();
        c.pass = entry.at("pass").get<bool>();
        r.checks.push_back(c);
    }
    r.all_pass = doc.at("all_pass").get<bool>();
    return r;
}

} // namespace framesph::report
