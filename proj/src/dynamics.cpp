#include "cstar/dynamics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "cstar/errors.hpp"

namespace cstar {

SuperpositionSpec SuperpositionSpec::from_polar(double a_mod, double a_phase, double b_mod, double b_phase) {
  return {std::polar(a_mod, a_phase), std::polar(b_mod, b_phase)};
}

void SuperpositionSpec::validate() const {
  const double n = std::norm(a) + std::norm(b);
  if (!std::isfinite(n) || std::abs(n - 1.0) > 1e-12)
    throw std::invalid_argument("superposition amplitudes must satisfy |a|^2 + |b|^2 = 1");
}

UniverseState superposition_state(const ParamPoint& p, const SuperpositionSpec& s) {
  return s.a * eigenvector(p, Level::L1) + s.b * eigenvector(p, Level::L3);
}

cplx hat_coherence(const ParamPoint& p, const CMat2& rho) {
  if (p.B() <= kGuardEps) return {std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN()};
  const CMat2 m = hat_basis(p);
  return (adjoint(m) * rho * m)(0, 1);
}

namespace {

void push_sample(EvolutionResult& r, double t, const ParamPoint& p, const UniverseState& psi) {
  const CMat2 rho = partial_trace_env(outer(psi, psi));
  r.times.push_back(t);
  r.states.push_back(psi);
  r.rho.push_back(rho);
  r.coherence.push_back(hat_coherence(p, rho));
}

void reserve(EvolutionResult& r, std::size_t n) {
  r.times.reserve(n);
  r.states.reserve(n);
  r.rho.reserve(n);
  r.coherence.reserve(n);
}

}  // namespace

EvolutionResult propagate_exact(const ParamPath& path, const UniverseState& psi0, double hbar) {
  if (!(hbar > 0.0)) throw std::invalid_argument("hbar must be > 0");
  if (std::abs(norm(psi0) - 1.0) > 1e-9) throw std::invalid_argument("initial state must be normalized");
  EvolutionResult r;
  reserve(r, path.size());
  UniverseState psi = psi0;
  push_sample(r, path.time(0), path.point(0), psi);
  for (std::size_t k = 0; k + 1 < path.size(); ++k) {
    const double dt = path.time(k + 1) - path.time(k);
    const CMat4 h = hamiltonian(midpoint(path.point(k), path.point(k + 1)), hbar);
    psi = expm(cplx(0.0, -dt / hbar) * h) * psi;
    push_sample(r, path.time(k + 1), path.point(k + 1), psi);
  }
  return r;
}

std::vector<double> dynamical_phase(const ParamPath& path, Level level) {
  std::vector<double> phase(path.size(), 0.0);
  for (std::size_t k = 0; k + 1 < path.size(); ++k) {
    const double dt = path.time(k + 1) - path.time(k);
    phase[k + 1] = phase[k] + eigenvalue(midpoint(path.point(k), path.point(k + 1)), level, 1.0) * dt;
  }
  return phase;
}

EvolutionResult adiabatic_transport(const ParamPath& path, Level level, double hbar) {
  if (!(hbar > 0.0)) throw std::invalid_argument("hbar must be > 0");
  for (const auto& p : path.points()) check_nondegenerate(p, level);
  const auto g = path_ordered_exp_cumulative(path, level_connection(level));
  const auto phase = dynamical_phase(path, level);
  EvolutionResult r;
  reserve(r, path.size());
  for (std::size_t k = 0; k < path.size(); ++k) {
    const CMat4 gu = tensor_product(g[k], CMat2::identity());
    const UniverseState psi = std::polar(1.0, -phase[k]) * (gu * eigenvector(path.point(k), level));
    push_sample(r, path.time(k), path.point(k), psi);
  }
  return r;
}

EvolutionResult evolve_superposition(const ParamPath& path, const SuperpositionSpec& spec, double hbar) {
  if (!(hbar > 0.0)) throw std::invalid_argument("hbar must be > 0");
  spec.validate();
  const auto g1 = path_ordered_exp_cumulative(path, level_connection(Level::L1));
  const auto g3 = path_ordered_exp_cumulative(path, level_connection(Level::L3));
  const auto ph1 = dynamical_phase(path, Level::L1);
  const auto ph3 = dynamical_phase(path, Level::L3);
  const double a2 = std::norm(spec.a), b2 = std::norm(spec.b);

  EvolutionResult r;
  reserve(r, path.size());
  for (std::size_t k = 0; k < path.size(); ++k) {
    const ParamPoint& p = path.point(k);
    const CMat4 g1u = tensor_product(g1[k], CMat2::identity());
    const CMat4 g3u = tensor_product(g3[k], CMat2::identity());
    const UniverseState psi = (spec.a * std::polar(1.0, -ph1[k])) * (g1u * eigenvector(p, Level::L1)) +
                              (spec.b * std::polar(1.0, -ph3[k])) * (g3u * eigenvector(p, Level::L3));

    const CMat2 cross = (spec.a * std::conj(spec.b) * std::polar(1.0, ph3[k] - ph1[k])) *
                        (g1[k] * cross_tau(p, Level::L1, Level::L3) * adjoint(g3[k]));
    const CMat2 rho = a2 * (g1[k] * eigen_density(p, Level::L1) * adjoint(g1[k])) +
                      b2 * (g3[k] * eigen_density(p, Level::L3) * adjoint(g3[k])) + cross + adjoint(cross);

    r.times.push_back(path.time(k));
    r.states.push_back(psi);
    r.rho.push_back(rho);
    r.coherence.push_back(hat_coherence(p, rho));
  }
  return r;
}

std::vector<cplx> coherence_closed_form(const ParamPath& path, const SuperpositionSpec& spec, double hbar) {
  (void)hbar;  // the dynamical phase lambda/hbar does not depend on hbar
  spec.validate();
  const auto ph1 = dynamical_phase(path, Level::L1);
  const auto ph3 = dynamical_phase(path, Level::L3);
  const auto factor = instanton_factor_profile(path);
  std::vector<cplx> out(path.size());
  cplx berry{};
  for (std::size_t k = 0; k < path.size(); ++k) {
    if (k > 0)
      berry += berry_connection(midpoint(path.point(k - 1), path.point(k)),
                                TangentVector::between(path.point(k - 1), path.point(k)));
    const ParamPoint& p = path.point(k);
    const CMat2 m = hat_basis(p);
    const cplx c = (adjoint(m) * cross_tau(p, Level::L1, Level::L3) * m)(0, 1);
    if (std::abs(c) <= 1e-12) throw std::domain_error("coherence formula degenerate: c vanishes");
    const double arg = -(ph3[k] - ph1[k]) + (-kI * berry).real() + std::arg(spec.a) - std::arg(spec.b) + std::arg(c);
    out[k] = std::abs(spec.a * spec.b * c) * factor[k] * std::cos(arg);
  }
  return out;
}

ComparisonReport compare_exact_adiabatic(const EvolutionResult& exact, const EvolutionResult& adiabatic) {
  if (exact.times.size() != adiabatic.times.size() || exact.times.empty())
    throw std::invalid_argument("compare_exact_adiabatic: sampling grids differ");
  for (std::size_t k = 0; k < exact.times.size(); ++k)
    if (exact.times[k] != adiabatic.times[k])
      throw std::invalid_argument("compare_exact_adiabatic: sampling grids differ");
  ComparisonReport rep;
  double sq = 0.0;
  std::size_t count = 0;
  for (std::size_t k = 0; k < exact.times.size(); ++k) {
    const double d = trace_distance(exact.rho[k], adiabatic.rho[k]);
    rep.max_trace_distance = std::max(rep.max_trace_distance, d);
    const cplx dc = exact.coherence[k] - adiabatic.coherence[k];
    if (std::isfinite(dc.real()) && std::isfinite(dc.imag())) {
      sq += std::norm(dc);
      ++count;
    }
  }
  rep.endpoint_trace_distance = trace_distance(exact.rho.back(), adiabatic.rho.back());
  rep.coherence_rms = count ? std::sqrt(sq / static_cast<double>(count)) : 0.0;
  return rep;
}

}  // namespace cstar
