#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <sys/wait.h>

#include "framesph/field_export.hpp"
#include "framesph/pipeline.hpp"
#include "test_helpers.hpp"

using namespace framesph;
namespace fs = std::filesystem;

namespace {

int run_cli(const std::string &args) {
    const std::string cmd = std::string(FRAMESPH_CLI_PATH) + " " + args + " 2>/dev/null";
    const int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const fs::path &path) {
    std::ifstream in(path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

fs::path out_dir() {
    const fs::path dir = fs::temp_directory_path() / "framesph_pipeline_test";
    fs::create_directories(dir);
    return dir;
}

} // namespace

TEST_CASE("identical run configurations produce byte-identical artifacts") {
    pipeline::RunConfig cfg;
    cfg.input_path = test_helpers::fixture("slab.json");
    const auto first = pipeline::run_simulation(cfg);
    const auto second = pipeline::run_simulation(cfg);
    CHECK(report::to_json(first.report) == report::to_json(second.report));

    std::ostringstream field_a, field_b;
    field_export::write_csv(first.particles, field_a);
    field_export::write_csv(second.particles, field_b);
    CHECK(field_a.str() == field_b.str());
}

TEST_CASE("field exports carry the documented headers") {
    pipeline::RunConfig cfg;
    cfg.input_path = test_helpers::fixture("slab.json");
    const auto profile = geometry::load_profile_file(cfg.input_path);
    const auto ps = pipeline::prepare_particles(profile, cfg);

    std::ostringstream csv;
    field_export::write_csv(ps, csv);
    CHECK(csv.str().rfind("x,y,k,T\n", 0) == 0);
    // one header + one row per particle
    std::size_t lines = 0;
    for (const char c : csv.str()) {
        if (c == '\n') ++lines;
    }
    CHECK(lines == ps.size() + 1);

    std::ostringstream vtk;
    field_export::write_vtk(ps, vtk);
    CHECK(vtk.str().rfind("# vtk DataFile Version 3.0\n", 0) == 0);
    CHECK(vtk.str().find("POINTS 1000 double") != std::string::npos);
    CHECK(vtk.str().find("SCALARS temperature double 1") != std::string::npos);
}

TEST_CASE("cli: simulate writes artifacts and exits zero") {
    const fs::path dir = out_dir();
    const fs::path report = dir / "slab_report.json";
    const fs::path field = dir / "slab_field.csv";
    const fs::path log = dir / "slab_convergence.csv";
    const int rc = run_cli("simulate -i " + test_helpers::fixture("slab.json") + " --quiet" +
                           " --report " + report.string() + " --field-csv " + field.string() +
                           " --convergence-log " + log.string() + " > /dev/null");
    CHECK(rc == 0);
    const auto parsed = report::report_from_json(slurp(report));
    CHECK(parsed.converged);
    CHECK(parsed.flux_imbalance < 0.01);
    CHECK(slurp(field).rfind("x,y,k,T\n", 0) == 0);
    CHECK(slurp(log).rfind("step,residual\n", 0) == 0);
}

TEST_CASE("cli: malformed documents exit with an error code") {
    const fs::path dir = out_dir();
    const fs::path bad = dir / "broken.json";
    std::ofstream(bad) << "{ this is not json";
    CHECK(run_cli("simulate -i " + bad.string() + " > /dev/null") == 1);
    CHECK(run_cli("simulate -i " + (dir / "missing.json").string() + " > /dev/null") == 1);
}

TEST_CASE("cli: non-convergence exits 3 but still exports the field") {
    const fs::path dir = out_dir();
    const fs::path field = dir / "partial_field.csv";
    const int rc = run_cli("simulate -i " + test_helpers::fixture("slab.json") +
                           " --quiet --max-steps 1 --field-csv " + field.string() + " > /dev/null");
    CHECK(rc == 3);
    CHECK(slurp(field).rfind("x,y,k,T\n", 0) == 0);
}

TEST_CASE("cli: validate exit codes reflect the tolerance bands") {
    CHECK(run_cli("validate -i " + test_helpers::fixture("slab_d2like.json") +
                  " --quiet > /dev/null") == 0);
    CHECK(run_cli("validate -i " + test_helpers::fixture("slab_validate.json") +
                  " --quiet > /dev/null") == 2);
    // validate without a reference case is a configuration error
    CHECK(run_cli("validate -i " + test_helpers::fixture("slab.json") + " --quiet > /dev/null") ==
          1);
}

TEST_CASE("cli: export-field writes the lattice without solving") {
    const fs::path dir = out_dir();
    const fs::path field = dir / "export_field.csv";
    const int rc = run_cli("export-field -i " + test_helpers::fixture("lframe.json") +
                           " --field-csv " + field.string() + " > /dev/null");
    CHECK(rc == 0);
    const std::string text = slurp(field);
    CHECK(text.rfind("x,y,k,T\n", 0) == 0);
    // initial temperature is the ambient mean
    CHECK(text.find(",10\n") != std::string::npos);
}

TEST_CASE("a fully ventilated cavity solves with its walls as cold surfaces") {
    // Widen the fixture's cavity gap beyond 10 mm and declare the opening
    // side; the region disappears and its walls couple to the outside air.
    std::ifstream in(test_helpers::fixture("slab_cavity.json"));
    std::ostringstream buffer;
    buffer << in.rdbuf();
    std::string doc = buffer.str();
    const std::string closed = "\"gap_width\": 0.0";
    const auto at = doc.find(closed);
    REQUIRE(at != std::string::npos);
    doc.replace(at, closed.size(), "\"gap_width\": 0.012, \"ventilates_to\": \"external\"");
    const fs::path vented = out_dir() / "vented_cavity.json";
    std::ofstream(vented) << doc;

    pipeline::RunConfig closed_cfg;
    closed_cfg.input_path = test_helpers::fixture("slab_cavity.json");
    const auto closed_run = pipeline::run_simulation(closed_cfg);

    pipeline::RunConfig vented_cfg;
    vented_cfg.input_path = vented.string();
    const auto vented_run = pipeline::run_simulation(vented_cfg);

    REQUIRE(closed_run.steady.converged);
    REQUIRE(vented_run.steady.converged);
    CHECK(vented_run.particles.size() < closed_run.particles.size()); // void left empty
    // Outside air reaching the section middle increases the heat flow.
    CHECK(vented_run.report.q_internal > closed_run.report.q_internal * 1.2);
    CHECK(vented_run.report.flux_imbalance < 0.01);
    for (const double t : vented_run.steady.temperatures) {
        CHECK(t >= -1e-6);
        CHECK(t <= 20.0 + 1e-6);
    }
}

TEST_CASE("cli: cavity table lists the coefficients") {
    const fs::path dir = out_dir();
    const fs::path table = dir / "cavity.csv";
    const int rc =
        run_cli("cavity -b 0.01 -d 0.01 --gap 0 --csv > " + table.string());
    CHECK(rc == 0);
    const std::string text = slurp(table);
    CHECK(text.find("class,unventilated") != std::string::npos);
    CHECK(text.find("k_eq,0.05483") != std::string::npos);

    // Non-rectangular input goes through the equivalent-rectangle conversion.
    const fs::path poly_table = dir / "cavity_poly.csv";
    const int rc_poly = run_cli("cavity --area 0.0002 --depth-extent 0.02 --width-extent 0.01"
                                " --gap 0.004 --csv > " + poly_table.string());
    CHECK(rc_poly == 0);
    const std::string poly_text = slurp(poly_table);
    CHECK(poly_text.find("class,slightly-ventilated") != std::string::npos);
    CHECK(poly_text.find("b,0.01") != std::string::npos);
    CHECK(poly_text.find("d,0.02") != std::string::npos);
}
