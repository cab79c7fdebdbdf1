#include "fracwell/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace fracwell::quad {

double adaptive(const std::function<double(double)>& f, double a, double b,
                double rel_tol) {
  return boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
      f, a, b, 15, rel_tol);
}

}  // namespace fracwell::quad
