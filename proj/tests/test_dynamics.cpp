#include <doctest.h>

#include "cstar/dynamics.hpp"
#include "cstar/errors.hpp"
#include "cstar/pathspec.hpp"
#include "oracle.hpp"

using namespace cstar;

namespace {
const ParamPoint kZ{0.0, 0.0, 1.0, 0.5};

ParamPath constant(const ParamPoint& p, double T, std::size_t n) {
  std::vector<double> ts;
  std::vector<ParamPoint> ps(n + 1, p);
  for (std::size_t k = 0; k <= n; ++k) ts.push_back(T * static_cast<double>(k) / static_cast<double>(n));
  return ParamPath(ts, ps);
}

const SuperpositionSpec kHalf = SuperpositionSpec::from_polar(std::sqrt(0.5), 0.0, std::sqrt(0.5), 0.0);
}  // namespace

TEST_CASE("superposition amplitudes") {
  CHECK_NOTHROW(kHalf.validate());
  CHECK_THROWS_AS(SuperpositionSpec::from_polar(1.0, 0.0, 0.5, 0.0).validate(), std::invalid_argument);
  const auto s = SuperpositionSpec::from_polar(0.6, 0.3, 0.8, -1.0);
  CHECK(std::abs(s.a - std::polar(0.6, 0.3)) < 1e-15);
  const CVec4 psi = superposition_state(kZ, s);
  CHECK(norm(psi) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("exact propagation of an eigenstate picks up only a phase") {
  const ParamPoint q{0.3, -0.2, 0.8, 0.5};
  const ParamPath path = constant(q, 7.0, 70);
  for (Level l : kAllLevels) {
    const auto r = propagate_exact(path, eigenvector(q, l));
    const CVec4 want = std::polar(1.0, -eigenvalue(q, l) * 7.0) * eigenvector(q, l);
    CHECK(norm(r.states.back() - want) < 1e-12);
    CHECK(r.times.back() == 7.0);
  }
}

TEST_CASE("exact propagation against a Taylor-series oracle") {
  const auto paths = parse("loop theta=0.9 B=1.2 alpha=0.4 T=3 steps=30");
  const CVec4 psi0 = superposition_state(paths[0].front(), kHalf);
  const auto r = propagate_exact(paths[0], psi0);
  CVec4 psi = psi0;
  for (std::size_t k = 0; k + 1 < paths[0].size(); ++k) {
    const double dt = paths[0].time(k + 1) - paths[0].time(k);
    const CMat4 h = oracle::hamiltonian(midpoint(paths[0].point(k), paths[0].point(k + 1)));
    psi = oracle::taylor_expm(cplx(0.0, -dt) * h) * psi;
  }
  CHECK(norm(r.states.back() - psi) < 1e-12);
  for (const auto& s : r.states) CHECK(norm(s) == doctest::Approx(1.0).epsilon(1e-12));
  for (std::size_t k = 0; k < r.rho.size(); ++k)
    CHECK(oracle::max_abs_diff(r.rho[k], oracle::ptrace2(oracle::outer(r.states[k], r.states[k]))) < 1e-14);
}

TEST_CASE("hbar drops out of the exact dynamics") {
  const auto paths = parse("ramp alpha from=1 to=0.3 B=(0.2,0.1,0.9) T=5 steps=50");
  const CVec4 psi0 = superposition_state(paths[0].front(), kHalf);
  const auto a = propagate_exact(paths[0], psi0, 1.0);
  const auto b = propagate_exact(paths[0], psi0, 2.5);
  CHECK(norm(a.states.back() - b.states.back()) < 1e-12);
  CHECK_THROWS_AS(propagate_exact(paths[0], psi0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(propagate_exact(paths[0], 2.0 * psi0), std::invalid_argument);
}

TEST_CASE("dynamical phase") {
  const ParamPath path = constant(kZ, 4.0, 8);
  const auto ph = dynamical_phase(path, Level::L3);
  CHECK(ph.front() == 0.0);
  CHECK(ph.back() == doctest::Approx(4.0 * eigenvalue(kZ, Level::L3)).epsilon(1e-14));
}

TEST_CASE("adiabatic transport on a constant path") {
  const ParamPath path = constant(kZ, 10.0, 100);
  const auto r = adiabatic_transport(path, Level::L3);
  const CVec4 want = std::polar(1.0, -eigenvalue(kZ, Level::L3) * 10.0) * eigenvector(kZ, Level::L3);
  CHECK(norm(r.states.back() - want) < 1e-12);
  CHECK_THROWS_AS(adiabatic_transport(constant({0, 0, 0, 0.5}, 1.0, 4), Level::L1), DegenerateLevel);
  CHECK_NOTHROW(adiabatic_transport(constant({0, 0, 0, 0.5}, 1.0, 4), Level::L3));
}

TEST_CASE("superposition on a constant path") {
  const ParamPath path = constant(kZ, 30.0, 300);
  const auto ad = evolve_superposition(path, kHalf);
  const auto ex = propagate_exact(path, superposition_state(kZ, kHalf));
  for (std::size_t k = 0; k < path.size(); k += 25) {
    CHECK(oracle::max_abs_diff(ad.rho[k], oracle::ptrace2(oracle::outer(ad.states[k], ad.states[k]))) < 1e-12);
    CHECK(oracle::max_abs_diff(ad.rho[k], ex.rho[k]) < 1e-10);
    CHECK(std::abs(ad.coherence[k]) == doctest::Approx(0.114876).epsilon(1e-5));
  }
  // the coherence rotates at lambda_3 - lambda_1
  const double dphi = std::arg(ad.coherence[10] / ad.coherence[0]);
  const double rate = dphi / path.time(10);
  CHECK(std::abs(rate) == doctest::Approx(0.309017).epsilon(1e-5));
  const auto rep = compare_exact_adiabatic(ex, ad);
  CHECK(rep.max_trace_distance < 1e-10);
  CHECK(rep.coherence_rms < 1e-10);
}

TEST_CASE("slow loop follows the adiabatic prediction for the product level") {
  const auto slow = parse("loop theta=1.2 B=1 alpha=0.3 T=200 steps=2000");
  const auto fast = parse("loop theta=1.2 B=1 alpha=0.3 T=20 steps=2000");
  auto endpoint = [](const ParamPath& p) {
    const auto ex = propagate_exact(p, eigenvector(p.front(), Level::L1));
    return compare_exact_adiabatic(ex, adiabatic_transport(p, Level::L1)).endpoint_trace_distance;
  };
  const double ds = endpoint(slow[0]), df = endpoint(fast[0]);
  CHECK(ds < 0.1);
  CHECK(ds < df);
}

TEST_CASE("transported superposition keeps unit trace") {
  // The C*-transported reduced state of L3 is frozen at its initial value even
  // when rho_3 itself changes along the ramp.
  const auto paths = parse("ramp alpha from=1.5 to=0.4 B=(0.3,0,0.9) T=40 steps=4000");
  const auto ad = evolve_superposition(paths[0], kHalf);
  for (const auto& r : ad.rho) {
    CHECK(std::abs(trace(r) - 1.0) < 1e-7);
    CHECK(hermiticity_defect(r) < 1e-12);
  }
  const auto l3 = adiabatic_transport(paths[0], Level::L3);
  CHECK(oracle::max_abs_diff(l3.rho.back(), eigen_density(paths[0].front(), Level::L3)) < 1e-7);
  CHECK(oracle::max_abs_diff(l3.rho.back(), eigen_density(paths[0].back(), Level::L3)) > 0.1);
}

TEST_CASE("closed-form coherence at the first sample") {
  const auto paths = parse("ramp alpha from=1 to=0.5 B=(0,0,1) T=5 steps=50");
  const auto s = SuperpositionSpec::from_polar(0.6, 0.3, 0.8, -1.0);
  const auto cf = coherence_closed_form(paths[0], s);
  const ParamPoint& p = paths[0].front();
  const CMat2 m = hat_basis(p);
  const cplx c = (adjoint(m) * oracle::ptrace2(oracle::outer(eigenvector(p, Level::L1), eigenvector(p, Level::L3))) * m)(0, 1);
  CHECK(std::abs(cf[0] - (s.a * std::conj(s.b) * c).real()) < 1e-14);
  for (const auto& v : cf) CHECK(v.imag() == 0.0);
}

TEST_CASE("comparison rejects mismatched grids") {
  const auto a = adiabatic_transport(constant(kZ, 1.0, 4), Level::L3);
  const auto b = adiabatic_transport(constant(kZ, 1.0, 5), Level::L3);
  CHECK_THROWS_AS(compare_exact_adiabatic(a, b), std::invalid_argument);
}

TEST_CASE("coherence is undefined at zero field") {
  const cplx c = hat_coherence({0, 0, 0, 0.5}, CMat2::identity());
  CHECK(std::isnan(c.real()));
}
