#include "cstar/geometry.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "cstar/errors.hpp"

namespace cstar {

double TangentVector::dB(const ParamPoint& p) const {
  const double b = p.B();
  if (b == 0.0) return 0.0;
  return (p.B1 * dB1 + p.B2 * dB2 + p.B3 * dB3) / b;
}

double TangentVector::dB0(const ParamPoint& p) const {
  return (p.B1 * dB1 + p.B2 * dB2 + p.B3 * dB3 + p.alpha * dalpha) / p.B0();
}

double TangentVector::length() const {
  return std::sqrt(dB1 * dB1 + dB2 * dB2 + dB3 * dB3 + dalpha * dalpha);
}

TangentVector TangentVector::between(const ParamPoint& from, const ParamPoint& to) {
  return {to.B1 - from.B1, to.B2 - from.B2, to.B3 - from.B3, to.alpha - from.alpha};
}

TangentVector operator+(const TangentVector& a, const TangentVector& b) {
  return {a.dB1 + b.dB1, a.dB2 + b.dB2, a.dB3 + b.dB3, a.dalpha + b.dalpha};
}

TangentVector operator*(double s, const TangentVector& t) {
  return {s * t.dB1, s * t.dB2, s * t.dB3, s * t.dalpha};
}

ParamPoint displace(const ParamPoint& p, const TangentVector& t, double h) {
  return {p.B1 + h * t.dB1, p.B2 + h * t.dB2, p.B3 + h * t.dB3, p.alpha + h * t.dalpha};
}

double minkowski(int mu, int nu) {
  if (mu < 0 || mu > 3 || nu < 0 || nu > 3) throw std::out_of_range("minkowski index");
  if (mu != nu) return 0.0;
  return mu == 0 ? 1.0 : -1.0;
}

cplx thooft(int mu, int nu, int rho) {
  if (mu < 0 || mu > 3 || nu < 0 || nu > 3 || rho < 0 || rho > 3) throw std::out_of_range("thooft index");
  if (rho == 0) return minkowski(mu, nu);
  if (mu == 0 && nu == 0) return 0.0;
  if (mu == 0) return nu == rho ? 1.0 : 0.0;
  if (nu == 0) return mu == rho ? -1.0 : 0.0;
  // Levi-Civita on (1,2,3)
  const int e = (mu - nu) * (nu - rho) * (rho - mu) / 2;
  return kI * static_cast<double>(e);
}

cplx berry_connection(const ParamPoint& p, const TangentVector& t) {
  const double b = p.B();
  const double den = b * (b + p.B3);
  if (b <= kGuardEps || b + p.B3 <= kGuardEps) throw SingularGauge("berry_connection: on the Dirac string B3 = -|B|");
  return -0.5 * kI * (p.B2 * t.dB1 - p.B1 * t.dB2) / den;
}

CMat2 cstar_connection_l3(const ParamPoint& p, const TangentVector& t) {
  if (p.alpha <= kGuardEps) throw SingularGauge("cstar_connection_l3: alpha below guard");
  const double b0 = p.B0();
  const std::array<double, 4> x{b0, p.B1, p.B2, p.B3};
  const std::array<double, 4> dx{t.dB0(p), t.dB1, t.dB2, t.dB3};
  const double a2 = p.alpha * p.alpha;

  CMat2 r = (-dx[0] / (2.0 * b0)) * CMat2::identity();
  for (int nu = 0; nu < 4; ++nu) {
    cplx c{};
    for (int mu = 0; mu < 4; ++mu)
      for (int rho = 0; rho < 4; ++rho) c += thooft(mu, nu, rho) * x[mu] * dx[rho];
    r += (c * minkowski(nu, nu) / (2.0 * a2)) * pauli(nu);
  }
  return r;
}

namespace {

// B0 - B without cancellation.
double gap_down(const ParamPoint& p) { return p.alpha * p.alpha / (p.B0() + p.B()); }

CMat2 solve_defining(const ParamPoint& p, Level level, const TangentVector& t, const CMat2& x,
                     const EtaForm* eta) {
  const CMat2 rho = eigen_density(p, level);
  if (level == Level::L3 || level == Level::L4) {
    if (eta) throw std::invalid_argument("eta freedom exists only for L1");
    return x * inverse(rho);
  }
  CMat2 a = x * pinv_hermitian(rho);
  if (eta) {
    if (level != Level::L1) throw std::invalid_argument("eta freedom is parametrized in the hat frame of L1");
    const CMat2 e = (*eta)(p, t);
    const double scale = std::max(1.0, norm(e));
    if (std::abs(e(0, 0)) > 1e-14 * scale || std::abs(e(1, 0)) > 1e-14 * scale)
      throw std::invalid_argument("eta must have a vanishing first column in the hat frame");
    const CMat2 m = hat_basis(p);
    a += m * e * adjoint(m);
  }
  return a;
}

}  // namespace

double instanton_connection_down(const ParamPoint& p, const TangentVector& t) {
  const double g = gap_down(p);
  if (g <= kGuardEps) throw SingularGauge("instanton connection: B0 - B below guard");
  const double b = p.B(), b0 = p.B0();
  return 0.5 * (b * t.dB0(p) - b0 * t.dB(p)) / (b0 * g);
}

double instanton_connection_up(const ParamPoint& p, const TangentVector& t) {
  const double b = p.B(), b0 = p.B0();
  return 0.5 * (-b * t.dB0(p) + b0 * t.dB(p)) / (b0 * (b0 + b));
}

CMat2 defining_rhs_fd(const ParamPoint& p, Level level, const TangentVector& t, double h) {
  if (!(h >= 1e-8 && h <= 1e-2)) throw std::invalid_argument("finite-difference step must lie in [1e-8, 1e-2]");
  const double len = t.length();
  if (len == 0.0) return CMat2::zero();
  const TangentVector u = (1.0 / len) * t;
  const CVec4 plus = eigenvector(displace(p, u, h), level);
  const CVec4 minus = eigenvector(displace(p, u, -h), level);
  const CVec4 d = cplx(len / (2.0 * h)) * (plus - minus);
  return partial_trace_env(outer(d, eigenvector(p, level)));
}

CMat2 defining_rhs_exact(const ParamPoint& p, Level level, const TangentVector& t) {
  const CVec4 d = eigenvector_derivative(p, level, t.as_array());
  return partial_trace_env(outer(d, eigenvector(p, level)));
}

CMat2 cstar_connection_defining(const ParamPoint& p, Level level, const TangentVector& t, double h,
                                const EtaForm* eta) {
  return solve_defining(p, level, t, defining_rhs_fd(p, level, t, h), eta);
}

CMat2 cstar_connection_exact(const ParamPoint& p, Level level, const TangentVector& t, const EtaForm* eta) {
  return solve_defining(p, level, t, defining_rhs_exact(p, level, t), eta);
}

ConnectionFn level_connection(Level level, const EtaForm* eta) {
  return [level, eta](const ParamPoint& p, const TangentVector& t) {
    return cstar_connection_exact(p, level, t, eta);
  };
}

std::vector<CMat2> path_ordered_exp_cumulative(const ParamPath& path, const ConnectionFn& conn) {
  std::vector<CMat2> out;
  out.reserve(path.size());
  CMat2 g = CMat2::identity();
  out.push_back(g);
  for (std::size_t k = 0; k + 1 < path.size(); ++k) {
    const ParamPoint mid = midpoint(path.point(k), path.point(k + 1));
    const TangentVector dx = TangentVector::between(path.point(k), path.point(k + 1));
    g = g * expm(-conn(mid, dx));
    out.push_back(g);
  }
  return out;
}

CMat2 path_ordered_exp(const ParamPath& path, const ConnectionFn& conn) {
  return path_ordered_exp_cumulative(path, conn).back();
}

cplx berry_holonomy(const ParamPath& loop) {
  if (!loop.closed()) throw std::invalid_argument("berry_holonomy: path is not closed");
  cplx sum{};
  for (std::size_t k = 0; k + 1 < loop.size(); ++k)
    sum += berry_connection(midpoint(loop.point(k), loop.point(k + 1)),
                            TangentVector::between(loop.point(k), loop.point(k + 1)));
  return std::exp(-sum);
}

double solid_angle(const ParamPath& loop) {
  auto unit = [](const ParamPoint& p) {
    const double b = p.B();
    if (b <= kGuardEps) throw SingularGauge("solid_angle: field vanishes");
    return std::array<double, 3>{p.B1 / b, p.B2 / b, p.B3 / b};
  };
  double omega = 0.0;
  for (std::size_t k = 0; k + 1 < loop.size(); ++k) {
    const auto a = unit(loop.point(k));
    const auto c = unit(loop.point(k + 1));
    const double triple = a[0] * c[1] - a[1] * c[0];
    const double den = 1.0 + a[0] * c[0] + a[1] * c[1] + a[2] * c[2] + a[2] + c[2];
    omega += 2.0 * std::atan2(triple, den);
  }
  return omega;
}

namespace {
double endpoint_factor(const ParamPoint& a, const ParamPoint& b) {
  const double ga = gap_down(a), gb = gap_down(b);
  if (ga <= kGuardEps || gb <= kGuardEps) throw SingularGauge("instanton factor: B0 - B below guard");
  return std::sqrt(b.B0() * ga / (gb * a.B0()));
}
}  // namespace

double instanton_factor(const ParamPath& path) { return endpoint_factor(path.front(), path.back()); }

double instanton_factor_numeric(const ParamPath& path) {
  double sum = 0.0;
  for (std::size_t k = 0; k + 1 < path.size(); ++k)
    sum += instanton_connection_down(midpoint(path.point(k), path.point(k + 1)),
                                     TangentVector::between(path.point(k), path.point(k + 1)));
  return std::exp(-sum);
}

std::vector<double> instanton_factor_profile(const ParamPath& path) {
  std::vector<double> f;
  f.reserve(path.size());
  for (const auto& q : path.points()) f.push_back(endpoint_factor(path.front(), q));
  return f;
}

UniverseConnection universe_connection(const ParamPoint& p, Level level, const TangentVector& t, double h) {
  UniverseConnection u;
  u.via_trace = trace(eigen_density(p, level) * cstar_connection_defining(p, level, t, h));
  const double len = t.length();
  if (len == 0.0) {
    u.direct = 0.0;
    return u;
  }
  const TangentVector v = (1.0 / len) * t;
  const CVec4 d = cplx(len / (2.0 * h)) *
                  (eigenvector(displace(p, v, h), level) - eigenvector(displace(p, v, -h), level));
  u.direct = inner(eigenvector(p, level), d);
  return u;
}

cplx universe_connection_exact(const ParamPoint& p, Level level, const TangentVector& t) {
  return inner(eigenvector(p, level), eigenvector_derivative(p, level, t.as_array()));
}

double asymptotic_gauge_norm(const std::array<double, 3>& field, double alpha) {
  const ParamPoint p{field[0], field[1], field[2], alpha};
  return operator_norm(cstar_connection_l3(p, TangentVector::unit_alpha()));
}

CVec2 spin_half_eigenvector(const Field& b, bool upper) {
  const double m = std::sqrt(b[0] * b[0] + b[1] * b[1] + b[2] * b[2]);
  const double s = m + b[2];
  if (m <= kGuardEps || s <= kGuardEps) throw SingularGauge("spin_half_eigenvector: on the Dirac string");
  const cplx w{b[0], -b[1]};
  const double n = std::sqrt(2.0 * m * s);
  if (upper) return {cplx(s / n), std::conj(w) / n};
  return {w / n, cplx(-s / n)};
}

cplx spin_half_connection(const Field& b, const Field& db, bool upper) {
  const double m = std::sqrt(b[0] * b[0] + b[1] * b[1] + b[2] * b[2]);
  const double s = m + b[2];
  if (m <= kGuardEps || s <= kGuardEps) throw SingularGauge("spin_half_connection: on the Dirac string");
  const cplx a = 0.5 * kI * (b[1] * db[0] - b[0] * db[1]) / (m * s);
  return upper ? -a : a;
}

CVec4 bilocal_state(const Field& bs, const Field& be, const std::array<double, 2>& weights) {
  return cplx(std::sqrt(weights[0])) *
             tensor_product(spin_half_eigenvector(bs, false), spin_half_eigenvector(be, false)) +
         cplx(std::sqrt(weights[1])) *
             tensor_product(spin_half_eigenvector(bs, true), spin_half_eigenvector(be, true));
}

BilocalResult bilocal_schmidt_check(const BilocalScenario& s, double h) {
  const std::size_t n = s.times.size();
  if (n < 2 || s.system_field.size() != n || s.environment_field.size() != n)
    throw std::invalid_argument("bilocal scenario: field samples must match the time grid (>= 2 samples)");
  if (s.weights[0] < 0.0 || s.weights[1] < 0.0 || std::abs(s.weights[0] + s.weights[1] - 1.0) > 1e-12)
    throw std::invalid_argument("bilocal scenario: Schmidt weights must be non-negative and sum to 1");

  auto mid3 = [](const Field& a, const Field& b) {
    return Field{0.5 * (a[0] + b[0]), 0.5 * (a[1] + b[1]), 0.5 * (a[2] + b[2])};
  };
  auto diff3 = [](const Field& a, const Field& b) { return Field{b[0] - a[0], b[1] - a[1], b[2] - a[2]}; };
  auto step3 = [](const Field& a, const Field& d, double k) {
    return Field{a[0] + k * d[0], a[1] + k * d[1], a[2] + k * d[2]};
  };

  BilocalResult r{};
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const Field ms = mid3(s.system_field[k], s.system_field[k + 1]);
    const Field me = mid3(s.environment_field[k], s.environment_field[k + 1]);
    const Field ds = diff3(s.system_field[k], s.system_field[k + 1]);
    const Field de = diff3(s.environment_field[k], s.environment_field[k + 1]);
    const double len = std::sqrt(ds[0] * ds[0] + ds[1] * ds[1] + ds[2] * ds[2] + de[0] * de[0] +
                                 de[1] * de[1] + de[2] * de[2]);
    if (len == 0.0) continue;
    const double q = h / len;
    const CVec4 d = cplx(1.0 / (2.0 * q)) * (bilocal_state(step3(ms, ds, q), step3(me, de, q), s.weights) -
                                            bilocal_state(step3(ms, ds, -q), step3(me, de, -q), s.weights));
    r.lhs += inner(bilocal_state(ms, me, s.weights), d);
    r.rhs += s.weights[0] * (spin_half_connection(ms, ds, false) + spin_half_connection(me, de, false)) +
             s.weights[1] * (spin_half_connection(ms, ds, true) + spin_half_connection(me, de, true));
  }
  return r;
}

}  // namespace cstar
