#include "framesph/field_export.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>

#include "framesph/error.hpp"

namespace framesph::field_export {

namespace {

// Shortest exact representation keeps exports byte-stable across runs.
std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::ofstream open_out(const std::string &path) {
    std::ofstream out(path);
    if (!out) {
        throw Error("cli", "cannot write '" + path + "'");
    }
    return out;
}

} // namespace

void write_csv(const particles::ParticleSet &ps, std::ostream &out) {
    out << "x,y,k,T\n";
    for (std::size_t i = 0; i < ps.size(); ++i) {
        out << num(ps.position[i].x) << ',' << num(ps.position[i].y) << ','
            << num(ps.conductivity[i]) << ',' << num(ps.temperature[i]) << '\n';
    }
}

void write_csv_file(const particles::ParticleSet &ps, const std::string &path) {
    auto out = open_out(path);
    write_csv(ps, out);
}

void write_vtk(const particles::ParticleSet &ps, std::ostream &out) {
    const std::size_t n = ps.size();
    out << "# vtk DataFile Version 3.0\n";
    out << "framesph particle field\n";
    out << "ASCII\n";
    out << "DATASET UNSTRUCTURED_GRID\n";
    out << "POINTS " << n << " double\n";
    for (std::size_t i = 0; i < n; ++i) {
        out << num(ps.position[i].x) << ' ' << num(ps.position[i].y) << " 0\n";
    }
    out << "CELLS " << n << ' ' << 2 * n << '\n';
    for (std::size_t i = 0; i < n; ++i) {
        out << "1 " << i << '\n';
    }
    out << "CELL_TYPES " << n << '\n';
    for (std::size_t i = 0; i < n; ++i) {
        out << "1\n"; // VTK_VERTEX
    }
    out << "POINT_DATA " << n << '\n';
    out << "SCALARS conductivity double 1\nLOOKUP_TABLE default\n";
    for (std::size_t i = 0; i < n; ++i) {
        out << num(ps.conductivity[i]) << '\n';
    }
    out << "SCALARS temperature double 1\nLOOKUP_TABLE default\n";
    for (std::size_t i = 0; i < n; ++i) {
        out << num(ps.temperature[i]) << '\n';
    }
}

void write_vtk_file(const particles::ParticleSet &ps, const std::string &path) {
    auto out = open_out(path);
    write_vtk(ps, out);
}

} // namespace framesph::field_export
