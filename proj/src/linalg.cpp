#include "cstar/linalg.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

namespace cstar {

CMat2 pauli(int mu) {
  switch (mu) {
    case 0: return CMat2::identity();
    case 1: return CMat2{{0.0, 1.0, 1.0, 0.0}};
    case 2: return CMat2{{0.0, -kI, kI, 0.0}};
    case 3: return CMat2{{1.0, 0.0, 0.0, -1.0}};
    default: throw std::out_of_range("pauli index must be in 0..3, got " + std::to_string(mu));
  }
}

CMat4 tensor_product(const CMat2& a, const CMat2& b) {
  CMat4 r;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t l = 0; l < 2; ++l) r(i + 2 * k, j + 2 * l) = a(i, j) * b(k, l);
  return r;
}

CVec4 tensor_product(const CVec2& a, const CVec2& b) {
  CVec4 r;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t k = 0; k < 2; ++k) r[i + 2 * k] = a[i] * b[k];
  return r;
}

CMat2 partial_trace_env(const CMat4& x) {
  CMat2 r;
  for (std::size_t s1 = 0; s1 < 2; ++s1)
    for (std::size_t t1 = 0; t1 < 2; ++t1) r(s1, t1) = x(s1, t1) + x(s1 + 2, t1 + 2);
  return r;
}

CMat2 amplitude_matrix(const CVec4& psi) {
  CMat2 m;
  for (std::size_t s1 = 0; s1 < 2; ++s1)
    for (std::size_t s2 = 0; s2 < 2; ++s2) m(s1, s2) = psi[s1 + 2 * s2];
  return m;
}

cplx det_c(const CMat2& x) { return x(0, 0) * x(1, 1) - x(0, 1) * x(1, 0); }

double det(const CMat2& x) { return det_c(x).real(); }

CMat2 inverse(const CMat2& x) {
  const cplx d = det_c(x);
  if (std::abs(d) < 1e-300) throw std::domain_error("inverse: singular 2x2 matrix");
  return CMat2{{x(1, 1) / d, -x(0, 1) / d, -x(1, 0) / d, x(0, 0) / d}};
}

namespace {

template <std::size_t N>
double off_diagonal_norm(const Mat<N>& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

// Solve A X = B by Gaussian elimination with partial pivoting.
template <std::size_t N>
Mat<N> solve(Mat<N> a, Mat<N> b) {
  for (std::size_t col = 0; col < N; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < N; ++r)
      if (std::abs(a(r, col)) > std::abs(a(piv, col))) piv = r;
    if (std::abs(a(piv, col)) == 0.0) throw std::domain_error("expm: singular Pade denominator");
    if (piv != col)
      for (std::size_t j = 0; j < N; ++j) {
        std::swap(a(col, j), a(piv, j));
        std::swap(b(col, j), b(piv, j));
      }
    for (std::size_t r = col + 1; r < N; ++r) {
      const cplx f = a(r, col) / a(col, col);
      if (f == cplx{}) continue;
      for (std::size_t j = col; j < N; ++j) a(r, j) -= f * a(col, j);
      for (std::size_t j = 0; j < N; ++j) b(r, j) -= f * b(col, j);
    }
  }
  Mat<N> x;
  for (std::size_t j = 0; j < N; ++j)
    for (std::size_t i = N; i-- > 0;) {
      cplx s = b(i, j);
      for (std::size_t k = i + 1; k < N; ++k) s -= a(i, k) * x(k, j);
      x(i, j) = s / a(i, i);
    }
  return x;
}

template <std::size_t N>
double one_norm(const Mat<N>& x) {
  double best = 0.0;
  for (std::size_t j = 0; j < N; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < N; ++i) s += std::abs(x(i, j));
    best = std::max(best, s);
  }
  return best;
}

template <std::size_t N>
Mat<N> expm_pade(const Mat<N>& x) {
  constexpr int m = 6;
  int squarings = 0;
  const double nrm = one_norm(x);
  if (nrm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(nrm / 0.5)));
  const Mat<N> xs = x * cplx{std::ldexp(1.0, -squarings)};

  Mat<N> num = Mat<N>::identity();
  Mat<N> den = Mat<N>::identity();
  Mat<N> power = Mat<N>::identity();
  double c = 1.0;
  for (int k = 1; k <= m; ++k) {
    c *= static_cast<double>(m - k + 1) / (k * (2.0 * m - k + 1));
    power = power * xs;
    num += power * cplx{c};
    den += power * cplx{(k % 2 == 0) ? c : -c};
  }
  Mat<N> r = solve(den, num);
  for (int i = 0; i < squarings; ++i) r = r * r;
  return r;
}

template <std::size_t N>
Mat<N> reconstruct(const Mat<N>& v, const std::array<cplx, N>& d) {
  Mat<N> r;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) {
      cplx s{};
      for (std::size_t k = 0; k < N; ++k) s += v(i, k) * d[k] * std::conj(v(j, k));
      r(i, j) = s;
    }
  return r;
}

}  // namespace

template <std::size_t N>
HermEigen<N> herm_eigen(const Mat<N>& x) {
  const double scale = norm(x);
  if (hermiticity_defect(x) > 1e-10 * scale)
    throw std::invalid_argument("herm_eigen: input is not Hermitian (||X - X^dag|| = " +
                                std::to_string(hermiticity_defect(x)) + ")");

  Mat<N> a = (x + adjoint(x)) * cplx{0.5};
  Mat<N> v = Mat<N>::identity();

  for (int sweep = 0; sweep < 64; ++sweep) {
    if (off_diagonal_norm(a) <= 1e-14 * scale) break;
    for (std::size_t p = 0; p + 1 < N; ++p)
      for (std::size_t q = p + 1; q < N; ++q) {
        const cplx b = a(p, q);
        const double ab = std::abs(b);
        if (ab <= 1e-300) continue;
        const double tau = (a(q, q).real() - a(p, p).real()) / (2.0 * ab);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const cplx ph = std::conj(b / ab);
        // G = diag(1, ph) * [[c, s], [-s, c]] restricted to (p, q)
        const cplx gpp = c, gpq = s, gqp = -s * ph, gqq = c * ph;

        for (std::size_t k = 0; k < N; ++k) {
          const cplx akp = a(k, p), akq = a(k, q);
          a(k, p) = akp * gpp + akq * gqp;
          a(k, q) = akp * gpq + akq * gqq;
          const cplx vkp = v(k, p), vkq = v(k, q);
          v(k, p) = vkp * gpp + vkq * gqp;
          v(k, q) = vkp * gpq + vkq * gqq;
        }
        for (std::size_t k = 0; k < N; ++k) {
          const cplx apk = a(p, k), aqk = a(q, k);
          a(p, k) = std::conj(gpp) * apk + std::conj(gqp) * aqk;
          a(q, k) = std::conj(gpq) * apk + std::conj(gqq) * aqk;
        }
        a(p, q) = a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
      }
  }

  std::array<std::size_t, N> order;
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

  HermEigen<N> out;
  for (std::size_t c = 0; c < N; ++c) {
    const std::size_t src = order[c];
    out.values[c] = a(src, src).real();
    double big = 0.0;
    for (std::size_t r = 0; r < N; ++r) big = std::max(big, std::abs(v(r, src)));
    std::size_t lead = 0;
    while (std::abs(v(lead, src)) < big - 1e-12) ++lead;
    const cplx z = v(lead, src);
    const cplx fix = std::conj(z) / std::abs(z);
    for (std::size_t r = 0; r < N; ++r) out.vectors(r, c) = v(r, src) * fix;
    out.vectors(lead, c) = std::abs(z);
  }
  return out;
}

template <std::size_t N>
Mat<N> expm(const Mat<N>& x) {
  const double s = norm(x);
  if (s == 0.0) return Mat<N>::identity();
  if (hermiticity_defect(x) <= 1e-14 * s) {
    const auto e = herm_eigen(x);
    std::array<cplx, N> d;
    for (std::size_t k = 0; k < N; ++k) d[k] = std::exp(e.values[k]);
    return reconstruct(e.vectors, d);
  }
  const Mat<N> ix = x * kI;
  if (hermiticity_defect(ix) <= 1e-14 * s) {
    // x = -i (ix) with ix Hermitian
    const auto e = herm_eigen(ix);
    std::array<cplx, N> d;
    for (std::size_t k = 0; k < N; ++k) d[k] = std::exp(-kI * e.values[k]);
    return reconstruct(e.vectors, d);
  }
  return expm_pade(x);
}

CMat2 pinv_hermitian(const CMat2& x, double cutoff) {
  const auto e = herm_eigen(x);
  const double top = std::max({1.0, std::abs(e.values[0]), std::abs(e.values[1])});
  std::array<cplx, 2> d;
  for (std::size_t k = 0; k < 2; ++k)
    d[k] = std::abs(e.values[k]) > cutoff * top ? 1.0 / e.values[k] : 0.0;
  return reconstruct(e.vectors, d);
}

double operator_norm(const CMat2& x) {
  const CMat2 g = adjoint(x) * x;
  const double tr = 0.5 * (g(0, 0).real() + g(1, 1).real());
  const double dd = 0.5 * (g(0, 0).real() - g(1, 1).real());
  const double top = tr + std::sqrt(dd * dd + std::norm(g(0, 1)));
  return std::sqrt(std::max(0.0, top));
}

double trace_distance(const CMat2& rho1, const CMat2& rho2) {
  CMat2 d = rho1 - rho2;
  d = (d + adjoint(d)) * cplx{0.5};
  const double half_sum = 0.5 * (d(0, 0).real() + d(1, 1).real());
  const double half_diff = 0.5 * (d(0, 0).real() - d(1, 1).real());
  const double r = std::sqrt(half_diff * half_diff + std::norm(d(0, 1)));
  return 0.5 * (std::abs(half_sum + r) + std::abs(half_sum - r));
}

template <std::size_t N>
std::ostream& operator<<(std::ostream& os, const Mat<N>& m) {
  for (std::size_t i = 0; i < N; ++i) {
    os << (i == 0 ? "[[" : " [");
    for (std::size_t j = 0; j < N; ++j) os << m(i, j) << (j + 1 < N ? ", " : "");
    os << (i + 1 < N ? "]\n" : "]]");
  }
  return os;
}

template HermEigen<2> herm_eigen<2>(const Mat<2>&);
template HermEigen<4> herm_eigen<4>(const Mat<4>&);
template Mat<2> expm<2>(const Mat<2>&);
template Mat<4> expm<4>(const Mat<4>&);
template std::ostream& operator<< <2>(std::ostream&, const Mat<2>&);
template std::ostream& operator<< <4>(std::ostream&, const Mat<4>&);

}  // namespace cstar
