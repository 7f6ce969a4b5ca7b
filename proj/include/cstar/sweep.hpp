#pragma once

// Batch kernels over independent samples. Every kernel exists twice: a plain
// loop in `serial` and an OpenMP loop in `omp`. Both evaluate the same
// per-item function, so their outputs are identical element by element.

#include <array>
#include <cstdint>
#include <vector>

#include "cstar/geometry.hpp"
#include "cstar/path.hpp"

namespace cstar::sweep {

/// Spectral and geometric checks at one random control point.
struct ProbeRecord {
  ParamPoint point;
  double spectrum_error = 0.0;    // max |analytic - eigensolver| over the sorted spectrum
  double spectrum_sum = 0.0;      // |sum of the four levels|
  double eigen_residual = 0.0;    // max_j ||H phi_j - lambda_j phi_j||
  double alpha_invariance = 0.0;  // max over L1/L2 of ||phi(alpha) - phi(alpha')||
  double det_rho1 = 0.0;          // |det rho_1|
  double det_rho3_error = 0.0;    // |det rho_3 - alpha^2 / (4 B0^2)|
  double commutator = 0.0;        // ||[rho_1, rho_3]||
  double trace_relation = 0.0;    // max over L1/L3 of |tr(rho A) - <<phi|dphi>>|, FD and analytic routes
  double fd_error = 0.0;          // |<<phi|dphi>>| by central differences vs analytic
  double universe_l3 = 0.0;       // |<<phi_3|dphi_3>>|
};

ProbeRecord probe_point(std::uint64_t seed, std::uint64_t index);

/// lambda_1..lambda_4 at every sample of a path.
std::array<double, 4> spectrum_row(const ParamPoint& p, double hbar);

namespace serial {
std::vector<ProbeRecord> probe(std::uint64_t seed, std::size_t count);
std::vector<std::array<double, 4>> spectrum_table(const ParamPath& path, double hbar);
std::vector<cplx> berry_holonomies(const std::vector<ParamPath>& loops);
}  // namespace serial

namespace omp {
std::vector<ProbeRecord> probe(std::uint64_t seed, std::size_t count);
std::vector<std::array<double, 4>> spectrum_table(const ParamPath& path, double hbar);
std::vector<cplx> berry_holonomies(const std::vector<ParamPath>& loops);
int max_threads();
}  // namespace omp

}  // namespace cstar::sweep
