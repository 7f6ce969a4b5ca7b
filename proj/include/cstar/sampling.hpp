#pragma once

#include <cstdint>

#include "cstar/geometry.hpp"
#include "cstar/model.hpp"

namespace cstar {

inline constexpr std::uint64_t kDefaultSeed = 20240917;

/// Random control point, a pure function of (seed, index): |B| in [0.2, 2],
/// polar cosine in [-0.9, 0.9] (clear of both Dirac strings), alpha in [0.1, 2].
ParamPoint random_point(std::uint64_t seed, std::uint64_t index);

/// Random tangent with components uniform in [-1, 1].
TangentVector random_tangent(std::uint64_t seed, std::uint64_t index);

}  // namespace cstar
