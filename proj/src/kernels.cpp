#include "fracwell/kernels.hpp"

#include <cmath>
#include <vector>

namespace fracwell::kern {

void matvec_scalar(const double* A, std::size_t n, const double* x, double* y) {
  for (std::size_t i = 0; i < n; ++i) {
    const double* row = A + i * n;
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) acc += row[j] * x[j];
    y[i] = acc;
  }
}

double dot_scalar(const double* x, const double* y, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i];
  return acc;
}

double sum_scalar(const double* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i];
  return acc;
}

// The elementwise kernels round exactly like the SIMD variants (which
// fuse the multiply-add), so results are bitwise independent of the
// selected backend.
void axpy_scalar(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = std::fma(a, x[i], y[i]);
}

void quartic_w_scalar(const double* z, double* w, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double t = std::fma(-z[i], z[i], 1.0);
    w[i] = t * t;
  }
}

void quartic_dw_scalar(const double* z, double* w, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    w[i] = (-4.0 * z[i]) * std::fma(-z[i], z[i], 1.0);
}

Backend detect_backend() {
#if defined(__x86_64__) || defined(_M_X64)
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma"))
    return Backend::avx2;
  return Backend::scalar;
#elif defined(__aarch64__)
  return Backend::neon;
#else
  return Backend::scalar;
#endif
}

namespace {
Backend g_backend = detect_backend();
}

Backend active_backend() { return g_backend; }

Backend set_backend(Backend b) {
  Backend prev = g_backend;
  if (b == detect_backend() || b == Backend::scalar)
    g_backend = b;
  else
    g_backend = Backend::scalar;
  return prev;
}

const char* backend_name(Backend b) {
  switch (b) {
    case Backend::avx2: return "avx2";
    case Backend::neon: return "neon";
    default: return "scalar";
  }
}

void matvec(const double* A, std::size_t n, const double* x, double* y) {
#if defined(__x86_64__) || defined(_M_X64)
  if (g_backend == Backend::avx2) return matvec_avx2(A, n, x, y);
#elif defined(__aarch64__)
  if (g_backend == Backend::neon) return matvec_neon(A, n, x, y);
#endif
  matvec_scalar(A, n, x, y);
}

double dot(const double* x, const double* y, std::size_t n) {
#if defined(__x86_64__) || defined(_M_X64)
  if (g_backend == Backend::avx2) return dot_avx2(x, y, n);
#elif defined(__aarch64__)
  if (g_backend == Backend::neon) return dot_neon(x, y, n);
#endif
  return dot_scalar(x, y, n);
}

double sum(const double* x, std::size_t n) {
#if defined(__x86_64__) || defined(_M_X64)
  if (g_backend == Backend::avx2) return sum_avx2(x, n);
#elif defined(__aarch64__)
  if (g_backend == Backend::neon) return sum_neon(x, n);
#endif
  return sum_scalar(x, n);
}

void axpy(double a, const double* x, double* y, std::size_t n) {
#if defined(__x86_64__) || defined(_M_X64)
  if (g_backend == Backend::avx2) return axpy_avx2(a, x, y, n);
#elif defined(__aarch64__)
  if (g_backend == Backend::neon) return axpy_neon(a, x, y, n);
#endif
  axpy_scalar(a, x, y, n);
}

void quartic_w(const double* z, double* w, std::size_t n) {
#if defined(__x86_64__) || defined(_M_X64)
  if (g_backend == Backend::avx2) return quartic_w_avx2(z, w, n);
#elif defined(__aarch64__)
  if (g_backend == Backend::neon) return quartic_w_neon(z, w, n);
#endif
  quartic_w_scalar(z, w, n);
}

void quartic_dw(const double* z, double* w, std::size_t n) {
#if defined(__x86_64__) || defined(_M_X64)
  if (g_backend == Backend::avx2) return quartic_dw_avx2(z, w, n);
#elif defined(__aarch64__)
  if (g_backend == Backend::neon) return quartic_dw_neon(z, w, n);
#endif
  quartic_dw_scalar(z, w, n);
}

double quadform(const double* A, std::size_t n, const double* v) {
  // two-pass v^T (A v); reuses the dispatched matvec and dot
  static thread_local std::vector<double> scratch;
  scratch.resize(n);
  matvec(A, n, v, scratch.data());
  return dot(v, scratch.data(), n);
}

}  // namespace fracwell::kern
