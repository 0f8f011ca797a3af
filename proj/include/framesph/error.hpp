#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace framesph {

// Every error thrown by the library names the module it came from, so the
// CLI can attribute failures ("geometry: ...", "solver: ...").
class Error : public std::runtime_error {
  public:
    Error(std::string module, const std::string &what)
        : std::runtime_error(module + ": " + what), module_(std::move(module)) {}

    const std::string &module() const noexcept { return module_; }

  private:
    std::string module_;
};

} // namespace framesph
