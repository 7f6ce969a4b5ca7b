#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cstar/geometry.hpp"
#include "cstar/sampling.hpp"

namespace cstar {

struct VerifyOptions {
  std::uint64_t seed = kDefaultSeed;
  double tol_scale = 1.0;
  std::size_t probes = 200;
  /// Extra point checked by the degeneracy guard.
  std::optional<ParamPoint> guard_point;
  Level guard_level = Level::L1;
};

struct CheckLine {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// "PASS name: detail" / "FAIL name: detail".
std::string format_check(const CheckLine& c);

std::vector<CheckLine> run_verify(const VerifyOptions& opt);

/// Closed path in which |B|, the field direction and alpha all oscillate.
ParamPath wobble_loop(std::size_t steps = 2000);

/// Three smooth closed two-field scenarios used by the Schmidt-identity check,
/// with weights (1, 0), (1/2, 1/2), (0.9, 0.1).
std::vector<BilocalScenario> bilocal_scenarios(std::size_t steps = 2000);

/// Hat-frame eta with vanishing first column, linear in the tangent. Used to
/// probe gauge covariance of the rank-one levels.
EtaForm sample_eta(std::uint64_t seed);

}  // namespace cstar
