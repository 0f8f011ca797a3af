#pragma once

#include <iosfwd>
#include <string>

#include "framesph/particles.hpp"

namespace framesph::field_export {

// CSV with the one-line header "x,y,k,T".
void write_csv(const particles::ParticleSet &ps, std::ostream &out);
void write_csv_file(const particles::ParticleSet &ps, const std::string &path);

// Legacy ASCII VTK point data (conductivity and temperature scalars).
void write_vtk(const particles::ParticleSet &ps, std::ostream &out);
void write_vtk_file(const particles::ParticleSet &ps, const std::string &path);

} // namespace framesph::field_export
