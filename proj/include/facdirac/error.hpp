#pragma once

#include <stdexcept>
#include <string>

namespace facdirac {

/// Raised for every contract violation in the library (bad indices, grid
/// mismatches, absent spectral states). The message is the diagnostic.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace facdirac
