#pragma once

// Dense complex kernel for the 2x2 (system) and 4x4 (universe) objects.
//
// Basis order for the two-spin space is (uu, du, ud, dd): the spin-1 index
// varies fastest, so a universe index is s1 + 2*s2 with s = 0 for up.

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <iosfwd>

namespace cstar {

using cplx = std::complex<double>;

inline constexpr cplx kI{0.0, 1.0};

template <std::size_t N>
struct Mat {
  std::array<cplx, N * N> a{};

  constexpr cplx& operator()(std::size_t r, std::size_t c) { return a[r * N + c]; }
  constexpr const cplx& operator()(std::size_t r, std::size_t c) const { return a[r * N + c]; }

  static constexpr Mat zero() { return Mat{}; }
  static constexpr Mat identity() {
    Mat m{};
    for (std::size_t i = 0; i < N; ++i) m(i, i) = 1.0;
    return m;
  }
  static constexpr Mat diag(const std::array<cplx, N>& d) {
    Mat m{};
    for (std::size_t i = 0; i < N; ++i) m(i, i) = d[i];
    return m;
  }

  Mat& operator+=(const Mat& o) {
    for (std::size_t i = 0; i < N * N; ++i) a[i] += o.a[i];
    return *this;
  }
  Mat& operator-=(const Mat& o) {
    for (std::size_t i = 0; i < N * N; ++i) a[i] -= o.a[i];
    return *this;
  }
  Mat& operator*=(cplx s) {
    for (auto& x : a) x *= s;
    return *this;
  }
  bool operator==(const Mat&) const = default;
};

template <std::size_t N>
using Vec = std::array<cplx, N>;

using CMat2 = Mat<2>;
using CMat4 = Mat<4>;
using CVec2 = Vec<2>;
using CVec4 = Vec<4>;

template <std::size_t N>
Mat<N> operator+(Mat<N> x, const Mat<N>& y) { return x += y; }
template <std::size_t N>
Mat<N> operator-(Mat<N> x, const Mat<N>& y) { return x -= y; }
template <std::size_t N>
Mat<N> operator-(Mat<N> x) { return x *= -1.0; }
template <std::size_t N>
Mat<N> operator*(Mat<N> x, cplx s) { return x *= s; }
template <std::size_t N>
Mat<N> operator*(cplx s, Mat<N> x) { return x *= s; }

template <std::size_t N>
Mat<N> operator*(const Mat<N>& x, const Mat<N>& y) {
  Mat<N> r{};
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t k = 0; k < N; ++k) {
      const cplx xik = x(i, k);
      if (xik == cplx{}) continue;
      for (std::size_t j = 0; j < N; ++j) r(i, j) += xik * y(k, j);
    }
  return r;
}

template <std::size_t N>
Vec<N> operator*(const Mat<N>& x, const Vec<N>& v) {
  Vec<N> r{};
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) r[i] += x(i, j) * v[j];
  return r;
}

template <std::size_t N>
Vec<N> operator+(Vec<N> x, const Vec<N>& y) {
  for (std::size_t i = 0; i < N; ++i) x[i] += y[i];
  return x;
}
template <std::size_t N>
Vec<N> operator-(Vec<N> x, const Vec<N>& y) {
  for (std::size_t i = 0; i < N; ++i) x[i] -= y[i];
  return x;
}
template <std::size_t N>
Vec<N> operator*(cplx s, Vec<N> x) {
  for (auto& c : x) c *= s;
  return x;
}

template <std::size_t N>
Mat<N> adjoint(const Mat<N>& x) {
  Mat<N> r;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) r(j, i) = std::conj(x(i, j));
  return r;
}

template <std::size_t N>
cplx trace(const Mat<N>& x) {
  cplx t{};
  for (std::size_t i = 0; i < N; ++i) t += x(i, i);
  return t;
}

/// Frobenius norm.
template <std::size_t N>
double norm(const Mat<N>& x) {
  double s = 0.0;
  for (const auto& c : x.a) s += std::norm(c);
  return std::sqrt(s);
}

template <std::size_t N>
double norm(const Vec<N>& v) {
  double s = 0.0;
  for (const auto& c : v) s += std::norm(c);
  return std::sqrt(s);
}

/// <x|y>, antilinear in x.
template <std::size_t N>
cplx inner(const Vec<N>& x, const Vec<N>& y) {
  cplx s{};
  for (std::size_t i = 0; i < N; ++i) s += std::conj(x[i]) * y[i];
  return s;
}

/// |x><y|
template <std::size_t N>
Mat<N> outer(const Vec<N>& x, const Vec<N>& y) {
  Mat<N> r;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) r(i, j) = x[i] * std::conj(y[j]);
  return r;
}

template <std::size_t N>
double hermiticity_defect(const Mat<N>& x) {
  return norm(x - adjoint(x));
}

template <std::size_t N>
Mat<N> commutator(const Mat<N>& x, const Mat<N>& y) {
  return x * y - y * x;
}

// Pauli matrices, sigma(0) is the identity.
CMat2 pauli(int mu);

/// a (x) b on the universe space, a acting on spin 1 (fast index).
CMat4 tensor_product(const CMat2& a, const CMat2& b);
CVec4 tensor_product(const CVec2& a, const CVec2& b);

/// Partial trace over the environment spin (spin 2).
CMat2 partial_trace_env(const CMat4& x);

/// Reshape a universe vector as the 2x2 amplitude matrix psi[s1][s2].
CMat2 amplitude_matrix(const CVec4& psi);

double det(const CMat2& x);  // real part; callers use it on Hermitian input
cplx det_c(const CMat2& x);
CMat2 inverse(const CMat2& x);

template <std::size_t N>
struct HermEigen {
  std::array<double, N> values;  // ascending
  Mat<N> vectors;                // columns, orthonormal
};

/// Cyclic Jacobi eigensolver for Hermitian matrices. Each eigenvector column is
/// phased so its largest-modulus component is real positive. Throws
/// std::invalid_argument when ||x - x^dag|| > 1e-10 ||x||.
template <std::size_t N>
HermEigen<N> herm_eigen(const Mat<N>& x);

/// Matrix exponential. (Anti-)Hermitian inputs go through the eigensolver,
/// everything else through scaling and squaring with a [6/6] Pade core.
template <std::size_t N>
Mat<N> expm(const Mat<N>& x);

/// Moore-Penrose pseudo-inverse of a Hermitian PSD matrix; eigenvalues below
/// `cutoff` are treated as zero.
CMat2 pinv_hermitian(const CMat2& x, double cutoff = 1e-10);

/// Largest singular value.
double operator_norm(const CMat2& x);

double trace_distance(const CMat2& rho1, const CMat2& rho2);

template <std::size_t N>
std::ostream& operator<<(std::ostream& os, const Mat<N>& m);

}  // namespace cstar
