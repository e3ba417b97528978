#pragma once

#include <stdexcept>
#include <string>

namespace gdalab {

/// Malformed instance files, descriptors, or point files.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Solver produced NaN/Inf or otherwise left the domain.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace gdalab
