#pragma once

// Spin-1/2 driven by B and coupled to a second spin-1/2:
//   H = B.S1 + (alpha/hbar) S1.S2,   S_k = (hbar/2) sigma.
// Field and coupling share angular-frequency units.

#include <array>
#include <string_view>

#include "cstar/linalg.hpp"

namespace cstar {

inline constexpr double kGuardEps = 1e-10;
inline constexpr double kDegeneracyGap = 1e-6;

/// Control quadrivector (B1, B2, B3, alpha); B0 = sqrt(|B|^2 + alpha^2).
struct ParamPoint {
  double B1 = 0.0;
  double B2 = 0.0;
  double B3 = 0.0;
  double alpha = 0.0;

  double B() const { return std::sqrt(B1 * B1 + B2 * B2 + B3 * B3); }
  double B0() const { return std::sqrt(B1 * B1 + B2 * B2 + B3 * B3 + alpha * alpha); }
  std::array<double, 3> field() const { return {B1, B2, B3}; }

  bool operator==(const ParamPoint&) const = default;
};

/// Throws std::invalid_argument unless all components are finite and alpha > 0.
void validate(const ParamPoint& p);

ParamPoint midpoint(const ParamPoint& a, const ParamPoint& b);

enum class Level { L1 = 0, L2 = 1, L3 = 2, L4 = 3 };

inline constexpr std::array<Level, 4> kAllLevels{Level::L1, Level::L2, Level::L3, Level::L4};

std::string_view to_string(Level l);
Level parse_level(std::string_view s);

using UniverseState = CVec4;

CMat4 hamiltonian(const ParamPoint& p, double hbar = 1.0);

/// lambda_1..lambda_4 indexed by Level.
std::array<double, 4> spectrum(const ParamPoint& p, double hbar = 1.0);
double eigenvalue(const ParamPoint& p, Level level, double hbar = 1.0);

/// Throws DegenerateLevel if `level` lies within kDegeneracyGap of another level
/// (in units with hbar = 1).
void check_nondegenerate(const ParamPoint& p, Level level);

/// Closed-form eigenvector in the north chart. L1/L2 are singular on the
/// half-axes B3 = -B (L1) and B3 = +B (L2); L4 is singular at B = 0. Near a
/// singularity this throws SingularGauge.
UniverseState eigenvector(const ParamPoint& p, Level level);

/// Exact directional derivative d(phi)/dx along `t` = (dB1, dB2, dB3, dalpha)
/// of the vector returned by eigenvector().
UniverseState eigenvector_derivative(const ParamPoint& p, Level level,
                                     const std::array<double, 4>& t);

/// Same eigenvector in the opposite chart for L1/L2 (multiplied by the phase
/// (conj(w)/|w|)^2, w = B1 - i B2). Valid where the north chart is not; throws
/// SingularGauge on its own string. L3/L4 have no alternative chart.
UniverseState eigenvector_rechart(const ParamPoint& p, Level level);

/// rho_j = tr_2 |phi_j><phi_j| in closed form: (1 - B.sigma / beta)/2 with
/// beta = B, -B, B0, -B0 for L1..L4.
CMat2 eigen_density(const ParamPoint& p, Level level);

/// tau_ij = tr_2 |phi_i><phi_j|.
CMat2 cross_tau(const ParamPoint& p, Level i, Level j);

struct HatFrame {
  CMat2 M;          // columns: |up-hat>, |down-hat>
  CMat2 rho1_hat;   // M^dag rho_1 M = diag(1, 0)
  CMat2 rho3_hat;   // diag((B0+B)/2B0, (B0-B)/2B0)
};

/// Frame diagonalizing rho_1 with |up-hat> the unit-weight direction (spin
/// anti-aligned with B). Throws SingularGauge when B is below kGuardEps.
HatFrame hat_frame(const ParamPoint& p);

/// Just the unitary of hat_frame().
CMat2 hat_basis(const ParamPoint& p);

}  // namespace cstar
