// Thin quadrature layer: fixed 4-point Gauss-Legendre data for element
// pair integrals and an adaptive wrapper for the oracle-side integrals.
#pragma once

#include <functional>

namespace fracwell::quad {

// nodes/weights on [-1, 1]
inline constexpr double gl4_x[4] = {-0.8611363115940526, -0.3399810435848563,
                                    0.3399810435848563, 0.8611363115940526};
inline constexpr double gl4_w[4] = {0.3478548451374538, 0.6521451548625461,
                                    0.6521451548625461, 0.3478548451374538};

// Adaptive Gauss-Kronrod integration of f over [a, b].
double adaptive(const std::function<double(double)>& f, double a, double b,
                double rel_tol);

}  // namespace fracwell::quad
