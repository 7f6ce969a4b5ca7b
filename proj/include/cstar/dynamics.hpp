#pragma once

#include <vector>

#include "cstar/geometry.hpp"
#include "cstar/linalg.hpp"
#include "cstar/model.hpp"
#include "cstar/path.hpp"

namespace cstar {

struct EvolutionResult {
  std::vector<double> times;
  std::vector<UniverseState> states;
  std::vector<CMat2> rho;
  std::vector<cplx> coherence;  // <up-hat| rho |down-hat>; NaN where the hat frame is undefined (B = 0)
};

/// psi(0) = a phi_1(x0) + b phi_3(x0).
struct SuperpositionSpec {
  cplx a{1.0, 0.0};
  cplx b{0.0, 0.0};

  static SuperpositionSpec from_polar(double a_mod, double a_phase, double b_mod, double b_phase);
  /// Throws std::invalid_argument unless |a|^2 + |b|^2 = 1 within 1e-12.
  void validate() const;
};

UniverseState superposition_state(const ParamPoint& p, const SuperpositionSpec& s);

/// Hat-frame coherence of a reduced density matrix at p.
cplx hat_coherence(const ParamPoint& p, const CMat2& rho);

/// psi_{k+1} = exp(-i H(mid) dt / hbar) psi_k.
EvolutionResult propagate_exact(const ParamPath& path, const UniverseState& psi0, double hbar = 1.0);

/// psi(t) = exp(-i int lambda dt / hbar) (g(t) (x) 1) phi(x(t)), g the
/// path-ordered exponential of the level connection.
EvolutionResult adiabatic_transport(const ParamPath& path, Level level, double hbar = 1.0);

/// Two-level (L1, L3) assembly of the transported superposition. rho(t) is
///   |a|^2 g1 rho1 g1^dag + |b|^2 g3 rho3 g3^dag
///   + a conj(b) e^{+i int (l3 - l1)/hbar} g1 tau13 g3^dag + h.c.
EvolutionResult evolve_superposition(const ParamPath& path, const SuperpositionSpec& spec, double hbar = 1.0);

/// Scalar cosine formula for the coherence, for comparison only:
///   |a b c| e^{-int A_down} cos(-int (l3 - l1)/hbar - i int A + arg a - arg b + arg c),
/// with c the off-diagonal hat-frame entry of tau13. Throws std::domain_error
/// when |c| vanishes.
std::vector<cplx> coherence_closed_form(const ParamPath& path, const SuperpositionSpec& spec, double hbar = 1.0);

struct ComparisonReport {
  double endpoint_trace_distance = 0.0;
  double max_trace_distance = 0.0;
  double coherence_rms = 0.0;
};

/// Throws std::invalid_argument when the time grids differ.
ComparisonReport compare_exact_adiabatic(const EvolutionResult& exact, const EvolutionResult& adiabatic);

/// Dynamical phase int_0^t lambda dt / hbar at every sample (midpoint rule).
std::vector<double> dynamical_phase(const ParamPath& path, Level level);

}  // namespace cstar
