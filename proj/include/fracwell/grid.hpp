// Uniform 1-D grids, nodal functions, staggered finite-difference
// derivatives and trapezoid integration.
//
// Derivatives of order ell are ell-fold forward differences scaled by
// h^-ell.  The samples live on a staggered grid shifted by ell*h/2 with
// n-ell nodes, so each application keeps the operator banded and its
// adjoint is the mirrored band.
#pragma once

#include <string>
#include <vector>

namespace fracwell {

struct Grid1D {
  double a = 0.0;
  double b = 1.0;
  int n = 2;
  double h = 1.0;

  double x(int i) const { return a + i * h; }
};

// Validates n >= 2 and b > a; h = (b-a)/(n-1).
Grid1D make_grid(double a, double b, int n);

bool same_grid(const Grid1D& g1, const Grid1D& g2, double tol = 1e-12);

struct GridFunction {
  Grid1D grid;
  std::vector<double> values;
};

// Checks values.size() == n and finiteness.
GridFunction make_grid_function(const Grid1D& grid, std::vector<double> values);

struct DerivativeSamples {
  int order = 0;
  Grid1D grid;  // staggered: offset order*h/2, n-order nodes
  std::vector<double> values;
};

// ell-fold forward difference scaled by h^-ell; ell = 0 returns the input
// samples unchanged.  Requires 0 <= ell <= n-2.
DerivativeSamples derivative(const GridFunction& u, int ell);

// Composite trapezoid rule.
double integrate(const Grid1D& grid, const std::vector<double>& values);
double integrate(const GridFunction& u);
double integrate(const DerivativeSamples& d);

// Trapezoid quadrature weights: h*(1/2, 1, ..., 1, 1/2).
std::vector<double> trapezoid_weights(const Grid1D& grid);

// CSV with header "x,value", 17 significant digits (round-trips doubles
// bit-exactly).  Reading validates the header, uniform spacing and
// finiteness, and reconstructs the grid.
void write_csv(const std::string& path, const GridFunction& u);
GridFunction read_csv(const std::string& path);

}  // namespace fracwell
