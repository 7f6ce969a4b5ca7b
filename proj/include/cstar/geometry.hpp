#pragma once

// Gauge connections over the control space and their holonomies.
//
// Connections are evaluators (point, tangent) -> 2x2 matrix; paths supply the
// midpoints. Path-ordered exponentials multiply segment factors with the
// earliest segment on the left, g <- g * exp(-A(mid, dx)), which is the
// ordering that makes psi = (g (x) 1) phi(x(t)) satisfy tr_2 |dpsi><psi| = 0.

#include <array>
#include <functional>
#include <vector>

#include "cstar/linalg.hpp"
#include "cstar/model.hpp"
#include "cstar/path.hpp"

namespace cstar {

struct TangentVector {
  double dB1 = 0.0;
  double dB2 = 0.0;
  double dB3 = 0.0;
  double dalpha = 0.0;

  /// d|B| = (B . dB) / |B|; zero at B = 0.
  double dB(const ParamPoint& p) const;
  /// dB0 = (|B| d|B| + alpha dalpha) / B0.
  double dB0(const ParamPoint& p) const;

  std::array<double, 4> as_array() const { return {dB1, dB2, dB3, dalpha}; }
  double length() const;

  static TangentVector between(const ParamPoint& from, const ParamPoint& to);
  static TangentVector unit_alpha() { return {0.0, 0.0, 0.0, 1.0}; }
};

TangentVector operator+(const TangentVector& a, const TangentVector& b);
TangentVector operator*(double s, const TangentVector& t);
ParamPoint displace(const ParamPoint& p, const TangentVector& t, double h);

using ConnectionFn = std::function<CMat2(const ParamPoint&, const TangentVector&)>;

/// Hat-frame 1-form eta = [[0, *], [0, *]] added as M eta M^dag to the
/// pseudo-inverse solution of the defining equation for L1. The first column
/// must vanish, so eta drops out of A rho_1.
using EtaForm = std::function<CMat2(const ParamPoint&, const TangentVector&)>;

/// Mixed-index coefficient table C_{mu nu rho}:
///   C_{mu nu 0} = eta_{mu nu},  C_{ijk} = i eps_{ijk},  C_{0ij} = -C_{i0j} = delta_ij.
/// Throws std::out_of_range for indices outside 0..3.
cplx thooft(int mu, int nu, int rho);

/// Minkowski metric diag(+1, -1, -1, -1).
double minkowski(int mu, int nu);

/// Monopole potential A = -(i/2) (B2 dB1 - B1 dB2) / (B (B + B3)); purely
/// imaginary. Throws SingularGauge near the Dirac string B3 = -|B|.
cplx berry_connection(const ParamPoint& p, const TangentVector& t);

/// Instanton connection for L3 in closed form,
///   -sigma_0 dB0/(2 B0) + C_{mu nu rho} B^mu sigma_nu dB^rho / (2 alpha^2),
/// with sigma_nu = eta_{nu kappa} sigma^kappa. Equals (1/2) d(rho_3) rho_3^{-1}.
/// Throws SingularGauge for alpha below the guard.
CMat2 cstar_connection_l3(const ParamPoint& p, const TangentVector& t);

/// Diagonal hat-frame components of (1/2) d(rho_3) rho_3^{-1}:
///   down: (B dB0 - B0 dB) / (2 B0 (B0 - B)),   up: same with B -> -B.
double instanton_connection_down(const ParamPoint& p, const TangentVector& t);
double instanton_connection_up(const ParamPoint& p, const TangentVector& t);

/// tr_2 |dphi><phi| along t, by central differences with step h along the unit
/// tangent.
CMat2 defining_rhs_fd(const ParamPoint& p, Level level, const TangentVector& t, double h);
/// tr_2 |dphi><phi| along t from the analytic eigenvector derivative.
CMat2 defining_rhs_exact(const ParamPoint& p, Level level, const TangentVector& t);

/// Solution of A rho = tr_2 |dphi><phi| with central differences (step h in
/// [1e-8, 1e-2]). L3/L4 use rho^{-1}; L1/L2 use the pseudo-inverse, plus
/// M eta M^dag for L1 when `eta` is given.
CMat2 cstar_connection_defining(const ParamPoint& p, Level level, const TangentVector& t, double h = 1e-4,
                                const EtaForm* eta = nullptr);

/// Same solution with the analytic eigenvector derivative in place of finite
/// differences.
CMat2 cstar_connection_exact(const ParamPoint& p, Level level, const TangentVector& t,
                             const EtaForm* eta = nullptr);

/// Connection evaluator for `level` built on cstar_connection_exact.
ConnectionFn level_connection(Level level, const EtaForm* eta = nullptr);

CMat2 path_ordered_exp(const ParamPath& path, const ConnectionFn& conn);

/// g(t_k) for every sample, g(t_0) = I.
std::vector<CMat2> path_ordered_exp_cumulative(const ParamPath& path, const ConnectionFn& conn);

/// exp(-oint A) over a closed loop. Throws std::invalid_argument for open paths.
cplx berry_holonomy(const ParamPath& loop);

/// Signed solid angle swept by the field direction, measured from the +B3
/// pole by spherical-triangle summation.
double solid_angle(const ParamPath& loop);

/// exp(-int A_down) from the endpoints alone.
double instanton_factor(const ParamPath& path);
/// Same quantity as a midpoint path-ordered exponential.
double instanton_factor_numeric(const ParamPath& path);
/// Endpoint formula evaluated from sample 0 to every sample.
std::vector<double> instanton_factor_profile(const ParamPath& path);

struct UniverseConnection {
  cplx via_trace;  // tr(rho A), A from the finite-difference defining solver
  cplx direct;     // <<phi|dphi>> by central differences
};

UniverseConnection universe_connection(const ParamPoint& p, Level level, const TangentVector& t,
                                       double h = 1e-4);
/// <<phi|dphi>> from the analytic derivative.
cplx universe_connection_exact(const ParamPoint& p, Level level, const TangentVector& t);

/// Operator norm of the L3 connection along the unit d(alpha) tangent.
double asymptotic_gauge_norm(const std::array<double, 3>& field, double alpha);

// Uncoupled two-spin scenario (no interaction term): each spin follows its
// own field. Single-spin eigenvectors use the north chart, lower = anti-aligned.

using Field = std::array<double, 3>;

CVec2 spin_half_eigenvector(const Field& b, bool upper);
/// <chi|dchi> in closed form for the chart above.
cplx spin_half_connection(const Field& b, const Field& db, bool upper);

struct BilocalScenario {
  std::vector<double> times;
  std::vector<Field> system_field;
  std::vector<Field> environment_field;
  std::array<double, 2> weights{0.5, 0.5};  // Schmidt weights for (lower,lower) and (upper,upper)
};

/// Schmidt-form universe vector sqrt(p1) chi-(Bs) chi-(Be) + sqrt(p2) chi+(Bs) chi+(Be).
CVec4 bilocal_state(const Field& bs, const Field& be, const std::array<double, 2>& weights);

struct BilocalResult {
  cplx lhs;  // int <<phi_E|dphi_E>> by finite differences on the universe vector
  cplx rhs;  // sum_i p_i (int <zeta_i|dzeta_i> + int <xi_i|dxi_i>) in closed form
};

BilocalResult bilocal_schmidt_check(const BilocalScenario& s, double h = 1e-5);

}  // namespace cstar
