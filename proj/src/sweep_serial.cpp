#include <algorithm>
#include <cmath>

#include "cstar/sampling.hpp"
#include "cstar/sweep.hpp"

namespace cstar::sweep {

ProbeRecord probe_point(std::uint64_t seed, std::uint64_t index) {
  ProbeRecord r;
  const ParamPoint p = random_point(seed, index);
  r.point = p;
  const CMat4 h = hamiltonian(p);
  const auto lam = spectrum(p);

  auto sorted = lam;
  std::sort(sorted.begin(), sorted.end());
  const auto eig = herm_eigen(h);
  for (int j = 0; j < 4; ++j) r.spectrum_error = std::max(r.spectrum_error, std::abs(sorted[j] - eig.values[j]));
  r.spectrum_sum = std::abs(lam[0] + lam[1] + lam[2] + lam[3]);

  for (Level l : kAllLevels) {
    const CVec4 phi = eigenvector(p, l);
    r.eigen_residual = std::max(r.eigen_residual, norm(h * phi - cplx(eigenvalue(p, l)) * phi));
  }
  ParamPoint q = p;
  q.alpha = 0.5 * p.alpha + 0.7;
  for (Level l : {Level::L1, Level::L2})
    r.alpha_invariance = std::max(r.alpha_invariance, norm(eigenvector(p, l) - eigenvector(q, l)));

  const CMat2 rho1 = eigen_density(p, Level::L1);
  const CMat2 rho3 = eigen_density(p, Level::L3);
  const double b0 = p.B0();
  r.det_rho1 = std::abs(det(rho1));
  r.det_rho3_error = std::abs(det(rho3) - p.alpha * p.alpha / (4.0 * b0 * b0));
  r.commutator = norm(commutator(rho1, rho3));

  const TangentVector t = random_tangent(seed, index);
  for (Level l : {Level::L1, Level::L3}) {
    const auto u = universe_connection(p, l, t, 1e-5);
    const cplx exact = universe_connection_exact(p, l, t);
    const cplx via_exact = trace(eigen_density(p, l) * cstar_connection_exact(p, l, t));
    r.trace_relation = std::max({r.trace_relation, std::abs(u.via_trace - u.direct), std::abs(via_exact - exact)});
    r.fd_error = std::max(r.fd_error, std::abs(u.direct - exact));
  }
  r.universe_l3 = std::abs(universe_connection_exact(p, Level::L3, t));
  return r;
}

std::array<double, 4> spectrum_row(const ParamPoint& p, double hbar) { return spectrum(p, hbar); }

namespace serial {

std::vector<ProbeRecord> probe(std::uint64_t seed, std::size_t count) {
  std::vector<ProbeRecord> out(count);
  for (std::size_t i = 0; i < count; ++i) out[i] = probe_point(seed, i);
  return out;
}

std::vector<std::array<double, 4>> spectrum_table(const ParamPath& path, double hbar) {
  std::vector<std::array<double, 4>> out(path.size());
  for (std::size_t i = 0; i < path.size(); ++i) out[i] = spectrum_row(path.point(i), hbar);
  return out;
}

std::vector<cplx> berry_holonomies(const std::vector<ParamPath>& loops) {
  std::vector<cplx> out(loops.size());
  for (std::size_t i = 0; i < loops.size(); ++i) out[i] = berry_holonomy(loops[i]);
  return out;
}

}  // namespace serial
}  // namespace cstar::sweep
