#include "cstar/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "cstar/errors.hpp"
#include "cstar/pathspec.hpp"
#include "cstar/sweep.hpp"

namespace cstar {

std::string format_check(const CheckLine& c) {
  return std::string(c.pass ? "PASS " : "FAIL ") + c.name + ": " + c.detail;
}

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string sci(double v) {
  std::ostringstream s;
  s.precision(3);
  s << std::scientific << v;
  return s.str();
}

template <class F>
BilocalScenario closed_scenario(std::size_t steps, std::array<double, 2> w, F&& fields) {
  BilocalScenario s;
  s.weights = w;
  for (std::size_t k = 0; k <= steps; ++k) {
    const double f = static_cast<double>(k) / static_cast<double>(steps);
    const auto [bs, be] = fields(kTwoPi * f);
    s.times.push_back(f);
    s.system_field.push_back(bs);
    s.environment_field.push_back(be);
  }
  return s;
}

ParamPath equatorial_loop(double alpha, int steps) {
  PathDescriptor d;
  d.kind = GeneratorKind::Loop;
  d.theta = std::numbers::pi / 2;
  d.B = 1.0;
  d.alpha = alpha;
  d.T = 1.0;
  d.steps = steps;
  return sample(d);
}

double wrap_angle(double a) { return std::remainder(a, kTwoPi); }

CheckLine defining_convergence(const VerifyOptions& o) {
  // Residual of the finite-difference solver against the exact right-hand side.
  double sum_h = 0.0, sum_h2 = 0.0, exact_residual = 0.0;
  for (std::uint64_t i = 0; i < 20; ++i) {
    const ParamPoint p = random_point(o.seed, i);
    const TangentVector t = random_tangent(o.seed, i);
    for (Level l : {Level::L1, Level::L3}) {
      const CMat2 rho = eigen_density(p, l);
      const CMat2 x = defining_rhs_exact(p, l, t);
      sum_h += norm(cstar_connection_defining(p, l, t, 1e-3) * rho - x);
      sum_h2 += norm(cstar_connection_defining(p, l, t, 5e-4) * rho - x);
      exact_residual = std::max(exact_residual, norm(cstar_connection_exact(p, l, t) * rho - x));
    }
  }
  const double ratio = sum_h / sum_h2;
  const bool ok = ratio >= 3.5 && ratio <= 4.5 && exact_residual <= 1e-12 * o.tol_scale;
  return {"defining_equation_convergence", ok,
          "ratio(h=1e-3 / h=5e-4) = " + std::to_string(ratio) + ", analytic residual " + sci(exact_residual)};
}

CheckLine trace_relation(const VerifyOptions& o) {
  const auto recs = sweep::omp::probe(o.seed, o.probes);
  double tr = 0.0, u3 = 0.0;
  for (const auto& r : recs) {
    tr = std::max(tr, r.trace_relation);
    u3 = std::max(u3, r.universe_l3);
  }
  const bool ok = tr <= 1e-8 * o.tol_scale && u3 <= 1e-10 * o.tol_scale;
  return {"trace_relation", ok, "max |tr(rho A) - <<phi|dphi>>| = " + sci(tr) + ", max |A_U3| = " + sci(u3)};
}

CheckLine bilocal(const VerifyOptions& o) {
  double worst = 0.0;
  for (const auto& s : bilocal_scenarios()) {
    const auto r = bilocal_schmidt_check(s);
    worst = std::max(worst, std::abs(r.lhs - r.rhs));
  }
  return {"bilocal_schmidt_identity", worst <= 1e-6 * o.tol_scale, "max |lhs - rhs| = " + sci(worst)};
}

CheckLine gauge_covariance(const VerifyOptions& o) {
  const EtaForm eta = sample_eta(o.seed);
  double local = 0.0;
  for (std::uint64_t i = 0; i < 20; ++i) {
    const ParamPoint p = random_point(o.seed, 1000 + i);
    const TangentVector t = random_tangent(o.seed, 1000 + i);
    for (Level l : {Level::L1}) {
      const CMat2 rho = eigen_density(p, l);
      const CMat2 a0 = cstar_connection_exact(p, l, t);
      const CMat2 a1 = cstar_connection_exact(p, l, t, &eta);
      local = std::max({local, norm((a1 - a0) * rho), std::abs(trace(rho * (a1 - a0)))});
    }
  }
  // Transported reduced state over a closed loop, with and without eta.
  const ParamPath loop = equatorial_loop(0.3, 4000);
  const CMat2 g0 = path_ordered_exp(loop, level_connection(Level::L1));
  const CMat2 g1 = path_ordered_exp(loop, level_connection(Level::L1, &eta));
  const CMat2 rho = eigen_density(loop.back(), Level::L1);
  const double holo = trace_distance(g0 * rho * adjoint(g0), g1 * rho * adjoint(g1));
  const bool ok = local <= 1e-12 * o.tol_scale && holo <= 1e-6 * o.tol_scale;
  return {"gauge_covariance", ok, "eta shift of A rho and tr(rho A) " + sci(local) + ", loop state " + sci(holo)};
}

CheckLine monopole(const VerifyOptions& o) {
  std::vector<ParamPath> loops;
  std::vector<double> thetas{std::numbers::pi / 6, std::numbers::pi / 3, std::numbers::pi / 2,
                             2 * std::numbers::pi / 3};
  for (double th : thetas) {
    PathDescriptor d;
    d.kind = GeneratorKind::Loop;
    d.theta = th;
    d.B = 1.0;
    d.alpha = 0.5;
    d.steps = 2000;
    loops.push_back(sample(d));
  }
  const auto h = sweep::omp::berry_holonomies(loops);
  double worst = 0.0;
  for (std::size_t i = 0; i < loops.size(); ++i)
    worst = std::max(worst, std::abs(wrap_angle(std::arg(h[i]) + 0.5 * solid_angle(loops[i]))));
  return {"monopole_holonomy", worst <= 1e-4 * o.tol_scale, "max |arg + Omega/2| = " + sci(worst)};
}

CheckLine instanton_closed(const VerifyOptions& o) {
  const double loop_dev = std::abs(instanton_factor_numeric(wobble_loop(20000)) - 1.0);
  return {"instanton_closed_path", loop_dev <= 1e-9 * o.tol_scale, "|factor - 1| = " + sci(loop_dev)};
}

CheckLine degeneracy(const VerifyOptions& o) {
  std::size_t checked = 0;
  try {
    for (std::uint64_t i = 0; i < o.probes; ++i) {
      const ParamPoint p = random_point(o.seed, i);
      for (Level l : kAllLevels) check_nondegenerate(p, l);
      ++checked;
    }
    if (o.guard_point) {
      validate(*o.guard_point);
      check_nondegenerate(*o.guard_point, o.guard_level);
      ++checked;
    }
  } catch (const DegenerateLevel& e) {
    return {"degeneracy_guard", false, std::string("guard fired: ") + e.what()};
  } catch (const std::invalid_argument& e) {
    return {"degeneracy_guard", false, std::string("invalid point: ") + e.what()};
  }
  return {"degeneracy_guard", true, std::to_string(checked) + " points clear of level crossings"};
}

}  // namespace

ParamPath wobble_loop(std::size_t steps) {
  std::vector<double> t(steps + 1);
  std::vector<ParamPoint> pts(steps + 1);
  for (std::size_t k = 0; k <= steps; ++k) {
    const double f = static_cast<double>(k) / static_cast<double>(steps);
    const double a = kTwoPi * (k == steps ? 0.0 : f);
    const double b = 1.0 + 0.5 * std::sin(a);
    t[k] = f;
    pts[k] = {0.3 * b, 0.2 * b * std::cos(a), 0.9 * b, 0.5 + 0.3 * std::cos(a)};
  }
  return ParamPath(std::move(t), std::move(pts), "wobble");
}

std::vector<BilocalScenario> bilocal_scenarios(std::size_t steps) {
  using F = Field;
  std::vector<BilocalScenario> out;
  out.push_back(closed_scenario(steps, {1.0, 0.0}, [](double t) {
    const double s = std::sin(std::numbers::pi / 3), c = std::cos(std::numbers::pi / 3);
    return std::pair{F{s * std::cos(t), s * std::sin(t), c},
                     F{0.8 * std::sin(std::numbers::pi / 4) * std::cos(-t), 0.8 * std::sin(std::numbers::pi / 4) * std::sin(-t),
                       0.8 * std::cos(std::numbers::pi / 4)}};
  }));
  out.push_back(closed_scenario(steps, {0.5, 0.5}, [](double t) {
    return std::pair{F{std::cos(t), 0.5 * std::sin(t), 0.8}, F{0.3 * std::sin(2 * t), 0.3 * std::cos(t), 1.0}};
  }));
  out.push_back(closed_scenario(steps, {0.9, 0.1}, [](double t) {
    return std::pair{F{0.6 * std::cos(t), 0.6 * std::sin(t), 0.5 + 0.2 * std::cos(2 * t)},
                     F{0.4 * std::cos(3 * t), 0.4 * std::sin(3 * t), 0.6}};
  }));
  return out;
}

EtaForm sample_eta(std::uint64_t seed) {
  std::mt19937_64 g(seed ^ 0x9e3779b97f4a7c15ULL);
  auto u = [&g] { return static_cast<double>(g() >> 11) * 0x1.0p-53 * 2.0 - 1.0; };
  const cplx c1{u(), u()}, c2{u(), u()};
  const std::array<double, 4> v1{u(), u(), u(), u()}, v2{u(), u(), u(), u()};
  return [=](const ParamPoint&, const TangentVector& t) {
    const auto a = t.as_array();
    double d1 = 0.0, d2 = 0.0;
    for (int i = 0; i < 4; ++i) {
      d1 += v1[i] * a[i];
      d2 += v2[i] * a[i];
    }
    CMat2 e;
    e(0, 1) = c1 * d1;
    e(1, 1) = c2 * d2;
    return e;
  };
}

std::vector<CheckLine> run_verify(const VerifyOptions& o) {
  return {defining_convergence(o), trace_relation(o), bilocal(o),      gauge_covariance(o),
          monopole(o),             instanton_closed(o), degeneracy(o)};
}

}  // namespace cstar
