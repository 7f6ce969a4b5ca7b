#pragma once

#include <stdexcept>
#include <string>

namespace cstar {

/// Raised near a coordinate-chart singularity (Dirac string, vanishing phase
/// denominator). Callers must re-chart; no value is returned.
class SingularGauge : public std::domain_error {
 public:
  explicit SingularGauge(const std::string& what) : std::domain_error(what) {}
};

/// Raised when a level is closer than the degeneracy threshold to another one.
class DegenerateLevel : public std::domain_error {
 public:
  explicit DegenerateLevel(const std::string& what) : std::domain_error(what) {}
};

}  // namespace cstar
