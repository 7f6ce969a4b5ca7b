#include "cstar/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "cstar/errors.hpp"

namespace cstar {

void validate(const ParamPoint& p) {
  if (!std::isfinite(p.B1) || !std::isfinite(p.B2) || !std::isfinite(p.B3) || !std::isfinite(p.alpha))
    throw std::invalid_argument("ParamPoint has non-finite components");
  if (!(p.alpha > 0.0)) throw std::invalid_argument("alpha must be > 0");
}

ParamPoint midpoint(const ParamPoint& a, const ParamPoint& b) {
  return {0.5 * (a.B1 + b.B1), 0.5 * (a.B2 + b.B2), 0.5 * (a.B3 + b.B3), 0.5 * (a.alpha + b.alpha)};
}

std::string_view to_string(Level l) {
  switch (l) {
    case Level::L1: return "L1";
    case Level::L2: return "L2";
    case Level::L3: return "L3";
    case Level::L4: return "L4";
  }
  return "?";
}

Level parse_level(std::string_view s) {
  for (Level l : kAllLevels)
    if (s == to_string(l)) return l;
  throw std::invalid_argument("unknown level '" + std::string(s) + "' (expected L1..L4)");
}

CMat4 hamiltonian(const ParamPoint& p, double hbar) {
  const CMat2 id = pauli(0);
  CMat4 h;
  const std::array<double, 3> b = p.field();
  for (int k = 1; k <= 3; ++k) {
    const CMat2 s = pauli(k);
    h += tensor_product(s, id) * cplx{0.5 * hbar * b[k - 1]};
    h += tensor_product(s, s) * cplx{0.25 * hbar * p.alpha};
  }
  return h;
}

std::array<double, 4> spectrum(const ParamPoint& p, double hbar) {
  const double b = p.B(), b0 = p.B0(), a = p.alpha;
  return {hbar * (a - 2.0 * b) / 4.0, hbar * (a + 2.0 * b) / 4.0, hbar * (-a - 2.0 * b0) / 4.0,
          hbar * (-a + 2.0 * b0) / 4.0};
}

double eigenvalue(const ParamPoint& p, Level level, double hbar) {
  return spectrum(p, hbar)[static_cast<std::size_t>(level)];
}

void check_nondegenerate(const ParamPoint& p, Level level) {
  const auto lam = spectrum(p, 1.0);
  const auto me = static_cast<std::size_t>(level);
  for (std::size_t k = 0; k < 4; ++k) {
    if (k == me) continue;
    if (std::abs(lam[k] - lam[me]) < kDegeneracyGap)
      throw DegenerateLevel("level " + std::string(to_string(level)) + " is degenerate with " +
                            std::string(to_string(static_cast<Level>(k))) + " (gap " +
                            std::to_string(std::abs(lam[k] - lam[me])) + ")");
  }
}

namespace {

// Shared pieces for L1/L2: phi = -chi (x) chi with chi = (w, -s)/sqrt(n),
// w = B1 - i B2, s = B3 + sign*B, n = 2 sign B s.
struct ProductChart {
  double sign;
  double b;
  cplx w;
  double s;
  double n;
};

ProductChart product_chart(const ParamPoint& p, Level level) {
  const double sign = level == Level::L1 ? 1.0 : -1.0;
  const double b = p.B();
  if (b <= kGuardEps)
    throw SingularGauge("eigenvector " + std::string(to_string(level)) +
                        ": field direction undefined (|B| below guard)");
  const double s = p.B3 + sign * b;
  if (std::abs(s) <= kGuardEps)
    throw SingularGauge("eigenvector " + std::string(to_string(level)) +
                        ": point lies on the Dirac string of the north chart; use eigenvector_rechart");
  return {sign, b, cplx{p.B1, -p.B2}, s, 2.0 * sign * b * s};
}

// L3/L4: phi = u / (2 sqrt(beta (beta + alpha))), beta = +-B0.
double instanton_beta(const ParamPoint& p, Level level) {
  const double b0 = p.B0();
  const double beta = level == Level::L3 ? b0 : -b0;
  if (beta * (beta + p.alpha) <= kGuardEps * std::max(1.0, b0))
    throw SingularGauge("eigenvector " + std::string(to_string(level)) +
                        ": normalization denominator vanishes (B0 - alpha below guard)");
  return beta;
}

bool is_product_level(Level l) { return l == Level::L1 || l == Level::L2; }

}  // namespace

UniverseState eigenvector(const ParamPoint& p, Level level) {
  if (is_product_level(level)) {
    const ProductChart c = product_chart(p, level);
    const double rn = 1.0 / std::sqrt(c.n);
    const CVec2 chi{c.w * rn, -c.s * rn};
    return cplx{-1.0} * tensor_product(chi, chi);
  }
  const double beta = instanton_beta(p, level);
  const double d = 2.0 * std::sqrt(beta * (beta + p.alpha));
  return {cplx{p.B2, p.B1} / d, -kI * (beta + p.B3 + p.alpha) / d, kI * (beta - p.B3 + p.alpha) / d,
          cplx{p.B2, -p.B1} / d};
}

UniverseState eigenvector_derivative(const ParamPoint& p, Level level, const std::array<double, 4>& t) {
  const double b = p.B();
  const double db = b > 0.0 ? (p.B1 * t[0] + p.B2 * t[1] + p.B3 * t[2]) / b : 0.0;
  if (is_product_level(level)) {
    const ProductChart c = product_chart(p, level);
    const cplx dw{t[0], -t[1]};
    const double ds = t[2] + c.sign * db;
    const double dn = 2.0 * c.sign * (db * c.s + c.b * ds);
    const double rn = 1.0 / std::sqrt(c.n);
    const CVec2 chi{c.w * rn, -c.s * rn};
    const double k = -0.5 * dn / c.n;
    const CVec2 dchi{dw * rn + k * chi[0], -ds * rn + k * chi[1]};
    return cplx{-1.0} * (tensor_product(dchi, chi) + tensor_product(chi, dchi));
  }
  const double beta = instanton_beta(p, level);
  const double b0 = p.B0();
  const double db0 = (b * db + p.alpha * t[3]) / b0;
  const double dbeta = level == Level::L3 ? db0 : -db0;
  const double q = beta * (beta + p.alpha);
  const double dq = dbeta * (2.0 * beta + p.alpha) + beta * t[3];
  const double d = 2.0 * std::sqrt(q);
  const double dd = dq / std::sqrt(q);
  const UniverseState u{cplx{p.B2, p.B1}, -kI * (beta + p.B3 + p.alpha), kI * (beta - p.B3 + p.alpha),
                        cplx{p.B2, -p.B1}};
  const UniverseState du{cplx{t[1], t[0]}, -kI * (dbeta + t[2] + t[3]), kI * (dbeta - t[2] + t[3]),
                         cplx{t[1], -t[0]}};
  return cplx{1.0 / d} * du - cplx{dd / (d * d)} * u;
}

UniverseState eigenvector_rechart(const ParamPoint& p, Level level) {
  if (!is_product_level(level))
    throw std::invalid_argument("eigenvector_rechart: only L1/L2 carry a Dirac-string chart");
  const double b = p.B();
  if (b <= kGuardEps) throw SingularGauge("eigenvector_rechart: field direction undefined");
  const cplx wb{p.B1, p.B2};  // conj(w)
  if (level == Level::L1) {
    const double m = b - p.B3;
    if (m <= kGuardEps) throw SingularGauge("eigenvector_rechart: point lies on the south chart's string");
    return {cplx{-m / (2.0 * b)}, wb / (2.0 * b), wb / (2.0 * b), -wb * wb / (2.0 * b * m)};
  }
  const double m = b + p.B3;
  if (m <= kGuardEps) throw SingularGauge("eigenvector_rechart: point lies on the south chart's string");
  return {cplx{-m / (2.0 * b)}, -wb / (2.0 * b), -wb / (2.0 * b), -wb * wb / (2.0 * b * m)};
}

CMat2 eigen_density(const ParamPoint& p, Level level) {
  double beta = 0.0;
  switch (level) {
    case Level::L1: beta = p.B(); break;
    case Level::L2: beta = -p.B(); break;
    case Level::L3: beta = p.B0(); break;
    case Level::L4: beta = -p.B0(); break;
  }
  if (std::abs(beta) <= kGuardEps)
    throw SingularGauge("eigen_density " + std::string(to_string(level)) + ": field direction undefined");
  const double h = 0.5 / beta;
  return CMat2{{cplx{0.5 - h * p.B3}, cplx{-h * p.B1, h * p.B2}, cplx{-h * p.B1, -h * p.B2},
                cplx{0.5 + h * p.B3}}};
}

CMat2 cross_tau(const ParamPoint& p, Level i, Level j) {
  return partial_trace_env(outer(eigenvector(p, i), eigenvector(p, j)));
}

HatFrame hat_frame(const ParamPoint& p) {
  if (p.B() <= kGuardEps) throw SingularGauge("hat_frame: field direction undefined (|B| below guard)");
  const CMat2 rho1 = eigen_density(p, Level::L1);
  const auto e = herm_eigen(rho1);
  HatFrame f;
  for (std::size_t r = 0; r < 2; ++r) {
    f.M(r, 0) = e.vectors(r, 1);
    f.M(r, 1) = e.vectors(r, 0);
  }
  const CMat2 md = adjoint(f.M);
  f.rho1_hat = md * rho1 * f.M;
  f.rho3_hat = md * eigen_density(p, Level::L3) * f.M;
  return f;
}

CMat2 hat_basis(const ParamPoint& p) { return hat_frame(p).M; }

}  // namespace cstar
