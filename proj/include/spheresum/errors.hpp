#pragma once

#include <stdexcept>
#include <string>

namespace spheresum {

// Degenerate or inconsistent geometric input (needle triangles, zero vectors,
// points with no containing face).
class GeometryError : public std::runtime_error {
 public:
  explicit GeometryError(const std::string& what) : std::runtime_error(what) {}
};

// Kernel evaluated at (or too close to) its singularity.
class SingularKernelError : public std::runtime_error {
 public:
  explicit SingularKernelError(const std::string& what) : std::runtime_error(what) {}
};

// Interpolation system too ill-conditioned to trust.
class ConditioningError : public std::runtime_error {
 public:
  ConditioningError(const std::string& what, double rcond_estimate)
      : std::runtime_error(what), rcond(rcond_estimate) {}
  double rcond;
};

// Bad run configuration (unknown key, out-of-range value, missing key).
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace spheresum
