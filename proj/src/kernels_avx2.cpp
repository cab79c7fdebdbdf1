// AVX2/FMA variants.  This translation unit is compiled with
// -mavx2 -mfma; callers reach it only through the runtime dispatch.
#include "fracwell/kernels.hpp"

#include <cmath>

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

namespace fracwell::kern {

namespace {
inline double hsum256(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d swapped = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, swapped));
}
}  // namespace

double dot_avx2(const double* x, const double* y, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 4), _mm256_loadu_pd(y + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4)
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
  double acc = hsum256(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) acc += x[i] * y[i];  // scalar tail
  return acc;
}

double sum_avx2(const double* x, std::size_t n) {
  __m256d acc4 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) acc4 = _mm256_add_pd(acc4, _mm256_loadu_pd(x + i));
  double acc = hsum256(acc4);
  for (; i < n; ++i) acc += x[i];
  return acc;
}

void matvec_avx2(const double* A, std::size_t n, const double* x, double* y) {
  for (std::size_t i = 0; i < n; ++i) y[i] = dot_avx2(A + i * n, x, n);
}

void axpy_avx2(double a, const double* x, double* y, std::size_t n) {
  const __m256d av = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d yi = _mm256_loadu_pd(y + i);
    yi = _mm256_fmadd_pd(av, _mm256_loadu_pd(x + i), yi);
    _mm256_storeu_pd(y + i, yi);
  }
  for (; i < n; ++i) y[i] = std::fma(a, x[i], y[i]);
}

void quartic_w_avx2(const double* z, double* w, std::size_t n) {
  const __m256d one = _mm256_set1_pd(1.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d zi = _mm256_loadu_pd(z + i);
    __m256d t = _mm256_fnmadd_pd(zi, zi, one);  // 1 - z^2
    _mm256_storeu_pd(w + i, _mm256_mul_pd(t, t));
  }
  for (; i < n; ++i) {
    const double t = std::fma(-z[i], z[i], 1.0);
    w[i] = t * t;
  }
}

void quartic_dw_avx2(const double* z, double* w, std::size_t n) {
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d m4 = _mm256_set1_pd(-4.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d zi = _mm256_loadu_pd(z + i);
    __m256d t = _mm256_fnmadd_pd(zi, zi, one);
    _mm256_storeu_pd(w + i, _mm256_mul_pd(_mm256_mul_pd(m4, zi), t));
  }
  for (; i < n; ++i) w[i] = (-4.0 * z[i]) * std::fma(-z[i], z[i], 1.0);
}

}  // namespace fracwell::kern

#endif  // x86_64
