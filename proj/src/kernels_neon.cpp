// NEON variants for aarch64; same contract as the AVX2 unit.
#include "fracwell/kernels.hpp"

#include <cmath>

#if defined(__aarch64__)

#include <arm_neon.h>

namespace fracwell::kern {

double dot_neon(const double* x, const double* y, std::size_t n) {
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc0 = vfmaq_f64(acc0, vld1q_f64(x + i), vld1q_f64(y + i));
    acc1 = vfmaq_f64(acc1, vld1q_f64(x + i + 2), vld1q_f64(y + i + 2));
  }
  double acc = vaddvq_f64(acc0) + vaddvq_f64(acc1);
  for (; i < n; ++i) acc += x[i] * y[i];
  return acc;
}

double sum_neon(const double* x, std::size_t n) {
  float64x2_t acc2 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) acc2 = vaddq_f64(acc2, vld1q_f64(x + i));
  double acc = vaddvq_f64(acc2);
  for (; i < n; ++i) acc += x[i];
  return acc;
}

void matvec_neon(const double* A, std::size_t n, const double* x, double* y) {
  for (std::size_t i = 0; i < n; ++i) y[i] = dot_neon(A + i * n, x, n);
}

void axpy_neon(double a, const double* x, double* y, std::size_t n) {
  const float64x2_t av = vdupq_n_f64(a);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    float64x2_t yi = vld1q_f64(y + i);
    yi = vfmaq_f64(yi, av, vld1q_f64(x + i));
    vst1q_f64(y + i, yi);
  }
  for (; i < n; ++i) y[i] = std::fma(a, x[i], y[i]);
}

void quartic_w_neon(const double* z, double* w, std::size_t n) {
  const float64x2_t one = vdupq_n_f64(1.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    float64x2_t zi = vld1q_f64(z + i);
    float64x2_t t = vfmsq_f64(one, zi, zi);  // 1 - z^2
    vst1q_f64(w + i, vmulq_f64(t, t));
  }
  for (; i < n; ++i) {
    const double t = std::fma(-z[i], z[i], 1.0);
    w[i] = t * t;
  }
}

void quartic_dw_neon(const double* z, double* w, std::size_t n) {
  const float64x2_t one = vdupq_n_f64(1.0);
  const float64x2_t m4 = vdupq_n_f64(-4.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    float64x2_t zi = vld1q_f64(z + i);
    float64x2_t t = vfmsq_f64(one, zi, zi);
    vst1q_f64(w + i, vmulq_f64(vmulq_f64(m4, zi), t));
  }
  for (; i < n; ++i) w[i] = (-4.0 * z[i]) * std::fma(-z[i], z[i], 1.0);
}

}  // namespace fracwell::kern

#endif  // aarch64
