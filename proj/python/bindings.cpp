#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "framesph/error.hpp"
#include "framesph/pipeline.hpp"

namespace py = pybind11;

namespace {

using namespace framesph;

particles::KernelSpec kernel_spec_of(double h, const std::string &family) {
    const auto fam = particles::kernel_family_from_string(family);
    particles::KernelSpec spec;
    spec.family = fam;
    spec.smoothing_length = h;
    spec.support_radius = particles::support_multiple(fam) * h;
    return spec;
}

py::dict check_to_dict(const report::QuantityCheck &c) {
    py::dict d;
    d["name"] = c.name;
    d["computed"] = c.computed;
    d["reference"] = c.reference;
    d["relative_error"] = c.relative_error;
    d["pass"] = c.pass;
    return d;
}

py::dict report_to_dict(const report::SteadyStateReport &r) {
    py::dict d;
    d["reference"] = r.reference ? py::cast(*r.reference) : py::none();
    d["q_internal"] = r.q_internal;
    d["q_external"] = r.q_external;
    d["flux_imbalance"] = r.flux_imbalance;
    d["l2d"] = r.l2d;
    d["uf"] = r.uf ? py::cast(*r.uf) : py::none();
    d["converged"] = r.converged;
    d["steps"] = r.steps;
    d["final_residual"] = r.final_residual;
    py::list checks;
    for (const auto &c : r.checks) checks.append(check_to_dict(c));
    d["checks"] = checks;
    d["all_pass"] = r.all_pass;
    return d;
}

pipeline::RunConfig make_run_config(const std::string &path, py::object dp, py::object h_over_dp,
                                    py::object kernel, py::object tolerance, py::object max_steps,
                                    py::object dt_safety, int threads) {
    pipeline::RunConfig cfg;
    cfg.input_path = path;
    if (!dp.is_none()) cfg.dp = dp.cast<double>();
    if (!h_over_dp.is_none()) cfg.h_over_dp = h_over_dp.cast<double>();
    if (!kernel.is_none()) cfg.kernel = kernel.cast<std::string>();
    if (!tolerance.is_none()) cfg.tolerance = tolerance.cast<double>();
    if (!max_steps.is_none()) cfg.max_steps = max_steps.cast<std::int64_t>();
    if (!dt_safety.is_none()) cfg.dt_safety = dt_safety.cast<double>();
    cfg.threads = threads;
    return cfg;
}

py::dict simulate(const std::string &path, py::object dp, py::object h_over_dp, py::object kernel,
                  py::object tolerance, py::object max_steps, py::object dt_safety, int threads,
                  bool return_field) {
    const auto cfg =
        make_run_config(path, dp, h_over_dp, kernel, tolerance, max_steps, dt_safety, threads);
    pipeline::PipelineResult result;
    {
        py::gil_scoped_release release;
        result = pipeline::run_simulation(cfg);
    }
    py::dict d = report_to_dict(result.report);
    if (return_field) {
        py::dict field;
        py::list xs, ys, ks, ts;
        for (std::size_t i = 0; i < result.particles.size(); ++i) {
            xs.append(result.particles.position[i].x);
            ys.append(result.particles.position[i].y);
            ks.append(result.particles.conductivity[i]);
            ts.append(result.particles.temperature[i]);
        }
        field["x"] = xs;
        field["y"] = ys;
        field["k"] = ks;
        field["T"] = ts;
        d["field"] = field;
    }
    return d;
}

py::dict cavity_properties(double gap, py::object b, py::object d, py::object area,
                           py::object depth_extent, py::object width_extent, double c1, double c3,
                           double c4) {
    cavity::CavitySpec spec;
    spec.name = "python";
    spec.gap_width = gap;
    const bool rect = !b.is_none() && !d.is_none();
    const bool poly = !area.is_none() && !depth_extent.is_none() && !width_extent.is_none();
    if (rect == poly) {
        throw Error("cavity", "give either (b, d) or (area, depth_extent, width_extent)");
    }
    if (rect) {
        spec.geometry = cavity::Rectangle{b.cast<double>(), d.cast<double>()};
    } else {
        spec.geometry = cavity::PolygonSummary{area.cast<double>(), depth_extent.cast<double>(),
                                               width_extent.cast<double>()};
    }
    const auto eval = cavity::equivalent_conductivity(spec, {c1, c3, c4});
    py::dict out;
    out["class"] = cavity::to_string(eval.ventilation);
    out["b"] = eval.rectangle.width_b;
    out["d"] = eval.rectangle.depth_d;
    out["h_a"] = eval.h_a;
    out["h_r"] = eval.h_r;
    out["resistance"] = eval.resistance;
    out["k_eq"] = eval.k_eq ? py::cast(*eval.k_eq) : py::none();
    return out;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Mesh-free steady-state heat transfer for window-frame cross-sections";

    py::register_exception<framesph::Error>(m, "FramesphError", PyExc_RuntimeError);

    m.def("classify_ventilation",
          [](double gap) { return cavity::to_string(cavity::classify_ventilation(gap)); },
          py::arg("gap_width"));
    m.def("equivalent_rectangle",
          [](double area, double depth_extent, double width_extent) {
              const auto r = cavity::equivalent_rectangle(area, depth_extent, width_extent);
              return py::make_tuple(r.width_b, r.depth_d);
          },
          py::arg("area"), py::arg("depth_extent"), py::arg("width_extent"),
          "Rectangle (b, d) with the same area and aspect ratio");
    m.def("convective_coefficient",
          [](double d, double b, double c1, double c3, double c4) {
              return cavity::convective_coefficient(d, b, {c1, c3, c4});
          },
          py::arg("d"), py::arg("b"), py::arg("c1") = 0.025, py::arg("c3") = 1.57,
          py::arg("c4") = 2.11);
    m.def("radiative_coefficient",
          [](double d, double b, double c1, double c3, double c4) {
              return cavity::radiative_coefficient(d, b, {c1, c3, c4});
          },
          py::arg("d"), py::arg("b"), py::arg("c1") = 0.025, py::arg("c3") = 1.57,
          py::arg("c4") = 2.11);
    m.def("cavity_properties", &cavity_properties, py::arg("gap_width") = 0.0,
          py::arg("b") = py::none(), py::arg("d") = py::none(), py::arg("area") = py::none(),
          py::arg("depth_extent") = py::none(), py::arg("width_extent") = py::none(),
          py::arg("c1") = 0.025, py::arg("c3") = 1.57, py::arg("c4") = 2.11,
          "Ventilation class, h_a, h_r, R and k_eq of one cavity");

    m.def("kernel_value",
          [](double r, double h, const std::string &family) {
              return particles::kernel_value(r, kernel_spec_of(h, family));
          },
          py::arg("r"), py::arg("h"), py::arg("family") = "quintic_spline");
    m.def("kernel_derivative",
          [](double r, double h, const std::string &family) {
              return particles::kernel_derivative(r, kernel_spec_of(h, family));
          },
          py::arg("r"), py::arg("h"), py::arg("family") = "quintic_spline");

    m.def("effective_conductivity", &solver::effective_conductivity, py::arg("k_i"),
          py::arg("k_j"), "Pairwise interface conductivity 4*ki*kj/(ki+kj)");

    m.def("thermal_conductance", &report::thermal_conductance, py::arg("q"),
          py::arg("t_internal"), py::arg("t_external"));
    m.def("thermal_transmittance",
          py::overload_cast<double, double, double, double>(&report::thermal_transmittance),
          py::arg("l2d"), py::arg("u_p"), py::arg("b_p"), py::arg("b_f"));
    m.def("reference_cases", [] {
        py::list out;
        for (const auto &c : report::reference_cases()) {
            py::dict d;
            d["name"] = c.name;
            d["l2d_ref"] = c.l2d_ref;
            d["uf_ref"] = c.uf_ref;
            d["u_p"] = c.u_p;
            d["b_p"] = c.b_p;
            d["b_f"] = c.b_f;
            out.append(d);
        }
        return out;
    });
    m.def("band_checks",
          [](double l2d, py::object uf, const std::string &case_name) {
              const auto ref = report::find_reference_case(case_name);
              if (!ref) throw Error("report", "unknown reference case '" + case_name + "'");
              std::optional<double> uf_value;
              if (!uf.is_none()) uf_value = uf.cast<double>();
              py::list out;
              for (const auto &c : report::band_checks(l2d, uf_value, *ref)) {
                  out.append(check_to_dict(c));
              }
              return out;
          },
          py::arg("l2d"), py::arg("uf") = py::none(), py::arg("case_name") = "D2");

    m.def("validate_profile_text",
          [](const std::string &text) {
              try {
                  geometry::load_profile(text);
                  return std::vector<std::string>{};
              } catch (const Error &e) {
                  return std::vector<std::string>{e.what()};
              }
          },
          py::arg("text"), "Empty list when the document is valid");

    m.def("simulate", &simulate, py::arg("path"), py::arg("dp") = py::none(),
          py::arg("h_over_dp") = py::none(), py::arg("kernel") = py::none(),
          py::arg("tolerance") = py::none(), py::arg("max_steps") = py::none(),
          py::arg("dt_safety") = py::none(), py::arg("threads") = 0,
          py::arg("return_field") = false,
          "Run the full pipeline on a profile document and return the report");
}
