#include "cstar/sampling.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace cstar {

namespace {
// Separate streams for points and tangents.
std::mt19937_64 stream(std::uint64_t seed, std::uint64_t index, std::uint32_t salt) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32), salt};
  return std::mt19937_64(seq);
}

// Fixed 53-bit mapping; std::uniform_real_distribution is not portable bit-for-bit.
double uniform(std::mt19937_64& g, double lo, double hi) {
  const double u = static_cast<double>(g() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}
}  // namespace

ParamPoint random_point(std::uint64_t seed, std::uint64_t index) {
  auto g = stream(seed, index, 1);
  const double b = uniform(g, 0.2, 2.0);
  const double c = uniform(g, -0.9, 0.9);
  const double phi = uniform(g, 0.0, 2.0 * std::numbers::pi);
  const double alpha = uniform(g, 0.1, 2.0);
  const double s = std::sqrt(1.0 - c * c);
  return {b * s * std::cos(phi), b * s * std::sin(phi), b * c, alpha};
}

TangentVector random_tangent(std::uint64_t seed, std::uint64_t index) {
  auto g = stream(seed, index, 2);
  TangentVector t;
  t.dB1 = uniform(g, -1.0, 1.0);
  t.dB2 = uniform(g, -1.0, 1.0);
  t.dB3 = uniform(g, -1.0, 1.0);
  t.dalpha = uniform(g, -1.0, 1.0);
  return t;
}

}  // namespace cstar
