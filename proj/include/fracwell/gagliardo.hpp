// Dense quadratic form for the fractional Gagliardo seminorm of a
// piecewise-linear nodal function on a uniform grid,
//
//   [v]_s^2(I) = iint_{I x I} |v(x)-v(y)|^2 / |x-y|^{1+2s} dx dy,
//
// with optional analytic tail corrections for a constant extension
// beyond a truncation radius T:
//
//   2 int_I (v(x)-c_right)^2 (T-x)^{-2s}/(2s) dx   (and mirrored left),
//
// plus the constant far-far interaction between the two extensions.
// The factor 2 counts both orderings of the (inside, outside) pair.
//
// Assembly: same-element and adjacent-element integrals use closed-form
// antiderivatives of t^{1-2s}, t^{2-2s}, t^{3-2s} (log branches near the
// vanishing-exponent cases); pairs separated by at least one element use
// tensor 4-point Gauss-Legendre.  On a uniform grid the pair blocks
// depend only on the gap, so each distinct block is computed once and
// scattered, in a fixed deterministic order.
#pragma once

#include <functional>
#include <string>
#include <vector>

#include "fracwell/grid.hpp"

namespace fracwell {

struct SeminormForm {
  Grid1D grid;
  double s = 0.5;
  std::vector<double> matrix;  // dense n x n row-major, exactly symmetric

  bool has_tail = false;
  double tail_T = 0.0;
  double c_left = 0.0;   // extension value on (-inf, -T)
  double c_right = 0.0;  // extension value on (T, inf)
  // tridiagonal tail forms, applied to (v - c_side); factor 2 included
  std::vector<double> tl_diag, tl_off;  // left tail
  std::vector<double> tr_diag, tr_off;  // right tail
  double tail_const = 0.0;              // far-far constant term
  // When T coincides with a grid endpoint and s >= 1/2 the boundary basis
  // integral diverges: the endpoint node must equal its extension value,
  // otherwise the energy is +inf.
  int pinned_left = -1;
  int pinned_right = -1;
};

SeminormForm assemble_form(const Grid1D& grid, double s);
SeminormForm assemble_form(const Grid1D& grid, double s, double tail_T,
                           double c_left, double c_right);

// v^T A v (+ tail terms), tiny negative rounding clamped to 0.
double seminorm(const SeminormForm& form, const std::vector<double>& v);

// d/dv of seminorm: 2 A v plus tail contributions.  Entries at pinned
// nodes carry only the finite part.
std::vector<double> seminorm_gradient(const SeminormForm& form,
                                      const std::vector<double>& v);

// One ordered copy of the kernel double integral restricted to
// x in elements [e1_lo, e1_hi], y in elements [e2_lo, e2_hi] (inclusive
// element index ranges).  Summing over a partition of the ordered pairs
// reproduces the full I x I integral.
double restricted_form_value(const Grid1D& grid, double s,
                             const std::vector<double>& v, int e1_lo, int e1_hi,
                             int e2_lo, int e2_hi);

// Whole-line seminorm through the Fourier identity
//   iint |v(x)-v(y)|^2/|x-y|^{1+2s} = A(s) int |xi|^{2s} |vhat(xi)|^2 dxi,
// A(s) = 2 int_R (1-cos t)|t|^{-1-2s} dt, both integrals by adaptive
// quadrature (relative tolerance 1e-8).  f_hat must decay; xi_max bounds
// the spectral support numerically.
double fourier_oracle(double s, const std::function<double(double)>& f_hat,
                      double xi_max);

// A(s) by adaptive quadrature (the route fourier_oracle uses).
double a_constant(double s);
// A(s) by the reflection closed form 4(-Gamma(-2s))cos(pi s); 2*pi at s=1/2.
double a_constant_gamma(double s);

// Binary matrix cache: 32-byte header (int64 n, double s, h, a,
// little-endian) followed by the row-major matrix.  load returns false
// and leaves *out untouched on any header mismatch; the cache never
// stores tail data.
void save_matrix_cache(const std::string& path, const SeminormForm& form);
bool load_matrix_cache(const std::string& path, const Grid1D& grid, double s,
                       SeminormForm* out);

}  // namespace fracwell
