// Compiled with -mavx2 -mfma; only called after a runtime CPU check.
#include "vlq/kernels.hpp"

#include <immintrin.h>

#include <cstddef>

namespace vlq::kernels::avx2 {

namespace {

// std::complex<double> is layout-compatible with double[2], so a span of n
// complex values is 2n interleaved doubles: [re0 im0 re1 im1 ...].
inline const double* raw(std::span<const Complex> s) {
  return reinterpret_cast<const double*>(s.data());
}
inline double* raw(std::span<Complex> s) { return reinterpret_cast<double*>(s.data()); }

inline double hsum_even(__m256d v) {
  // v = [a0 b0 a1 b1] -> a0 + a1
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  return _mm_cvtsd_f64(_mm_add_sd(lo, hi));
}

inline double hsum_odd(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_unpackhi_pd(s, s));
}

}  // namespace

Complex dotc(std::span<const Complex> u, std::span<const Complex> v) {
  const double* pu = raw(u);
  const double* pv = raw(v);
  const std::size_t n = u.size();
  // prod  accumulates [ur*vr, ui*vi] per complex lane
  // cross accumulates [ur*vi, ui*vr]
  __m256d prod = _mm256_setzero_pd();
  __m256d cross = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d a = _mm256_loadu_pd(pu + 2 * i);
    __m256d b = _mm256_loadu_pd(pv + 2 * i);
    __m256d bs = _mm256_permute_pd(b, 0b0101);
    prod = _mm256_fmadd_pd(a, b, prod);
    cross = _mm256_fmadd_pd(a, bs, cross);
  }
  double re = hsum_even(prod) + hsum_odd(prod);
  double im = hsum_even(cross) - hsum_odd(cross);
  for (; i < n; ++i) {
    re += u[i].real() * v[i].real() + u[i].imag() * v[i].imag();
    im += u[i].real() * v[i].imag() - u[i].imag() * v[i].real();
  }
  return {re, im};
}

Complex dotu(std::span<const Complex> u, std::span<const Complex> v) {
  const double* pu = raw(u);
  const double* pv = raw(v);
  const std::size_t n = u.size();
  __m256d prod = _mm256_setzero_pd();
  __m256d cross = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d a = _mm256_loadu_pd(pu + 2 * i);
    __m256d b = _mm256_loadu_pd(pv + 2 * i);
    __m256d bs = _mm256_permute_pd(b, 0b0101);
    prod = _mm256_fmadd_pd(a, b, prod);
    cross = _mm256_fmadd_pd(a, bs, cross);
  }
  double re = hsum_even(prod) - hsum_odd(prod);
  double im = hsum_even(cross) + hsum_odd(cross);
  for (; i < n; ++i) {
    re += u[i].real() * v[i].real() - u[i].imag() * v[i].imag();
    im += u[i].real() * v[i].imag() + u[i].imag() * v[i].real();
  }
  return {re, im};
}

void axpy(Complex a, std::span<const Complex> x, std::span<Complex> y) {
  const double* px = raw(x);
  double* py = raw(y);
  const std::size_t n = x.size();
  const __m256d ar = _mm256_set1_pd(a.real());
  const __m256d ai = _mm256_set1_pd(a.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d xv = _mm256_loadu_pd(px + 2 * i);
    __m256d xs = _mm256_permute_pd(xv, 0b0101);
    // [ar*xr - ai*xi, ar*xi + ai*xr]
    __m256d ax = _mm256_fmaddsub_pd(ar, xv, _mm256_mul_pd(ai, xs));
    _mm256_storeu_pd(py + 2 * i, _mm256_add_pd(_mm256_loadu_pd(py + 2 * i), ax));
  }
  for (; i < n; ++i) {
    y[i] = {y[i].real() + a.real() * x[i].real() - a.imag() * x[i].imag(),
            y[i].imag() + a.real() * x[i].imag() + a.imag() * x[i].real()};
  }
}

double norm_squared(std::span<const Complex> v) {
  const double* p = raw(v);
  const std::size_t m = 2 * v.size();
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= m; i += 4) {
    __m256d a = _mm256_loadu_pd(p + i);
    acc = _mm256_fmadd_pd(a, a, acc);
  }
  double s = hsum_even(acc) + hsum_odd(acc);
  for (; i < m; ++i) s += p[i] * p[i];
  return s;
}

}  // namespace vlq::kernels::avx2
