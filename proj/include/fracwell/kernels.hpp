// Hot arithmetic kernels: scalar reference implementations plus SIMD
// variants selected at runtime.  Everything above this layer calls the
// dispatched entry points; the *_scalar versions stay callable so the
// equivalence tests can compare paths on the same data.
#pragma once

#include <cstddef>

namespace fracwell::kern {

enum class Backend { scalar, avx2, neon };

// Highest backend the running CPU supports.
Backend detect_backend();

// Currently active backend (defaults to detect_backend() at startup).
Backend active_backend();

// Force a backend, e.g. scalar for tests; returns the previous one.
// Requesting an unsupported backend falls back to scalar.
Backend set_backend(Backend b);

const char* backend_name(Backend b);

// y = A x for a dense row-major n x n matrix.
void matvec(const double* A, std::size_t n, const double* x, double* y);
void matvec_scalar(const double* A, std::size_t n, const double* x, double* y);

double dot(const double* x, const double* y, std::size_t n);
double dot_scalar(const double* x, const double* y, std::size_t n);

double sum(const double* x, std::size_t n);
double sum_scalar(const double* x, std::size_t n);

// y += a x
void axpy(double a, const double* x, double* y, std::size_t n);
void axpy_scalar(double a, const double* x, double* y, std::size_t n);

// w[i] = (1 - z[i]^2)^2 and its derivative -4 z (1 - z^2)
void quartic_w(const double* z, double* w, std::size_t n);
void quartic_w_scalar(const double* z, double* w, std::size_t n);
void quartic_dw(const double* z, double* w, std::size_t n);
void quartic_dw_scalar(const double* z, double* w, std::size_t n);

// v^T A v via the dispatched matvec/dot (A dense row-major symmetric).
double quadform(const double* A, std::size_t n, const double* v);

#if defined(__x86_64__) || defined(_M_X64)
void matvec_avx2(const double* A, std::size_t n, const double* x, double* y);
double dot_avx2(const double* x, const double* y, std::size_t n);
double sum_avx2(const double* x, std::size_t n);
void axpy_avx2(double a, const double* x, double* y, std::size_t n);
void quartic_w_avx2(const double* z, double* w, std::size_t n);
void quartic_dw_avx2(const double* z, double* w, std::size_t n);
#endif

#if defined(__aarch64__)
void matvec_neon(const double* A, std::size_t n, const double* x, double* y);
double dot_neon(const double* x, const double* y, std::size_t n);
double sum_neon(const double* x, std::size_t n);
void axpy_neon(double a, const double* x, double* y, std::size_t n);
void quartic_w_neon(const double* z, double* w, std::size_t n);
void quartic_dw_neon(const double* z, double* w, std::size_t n);
#endif

}  // namespace fracwell::kern
