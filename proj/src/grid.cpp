#include "fracwell/grid.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <stdexcept>

namespace fracwell {

Grid1D make_grid(double a, double b, int n) {
  if (!(std::isfinite(a) && std::isfinite(b)))
    throw std::invalid_argument("make_grid: endpoints must be finite");
  if (n < 2) throw std::invalid_argument("make_grid: n must be >= 2");
  if (!(b > a)) throw std::invalid_argument("make_grid: requires b > a");
  Grid1D g;
  g.a = a;
  g.b = b;
  g.n = n;
  g.h = (b - a) / (n - 1);
  return g;
}

bool same_grid(const Grid1D& g1, const Grid1D& g2, double tol) {
  const double scale = std::max(1.0, std::abs(g1.b - g1.a));
  return g1.n == g2.n && std::abs(g1.a - g2.a) <= tol * scale &&
         std::abs(g1.b - g2.b) <= tol * scale;
}

GridFunction make_grid_function(const Grid1D& grid, std::vector<double> values) {
  if (static_cast<int>(values.size()) != grid.n)
    throw std::invalid_argument("make_grid_function: values size does not match grid");
  for (double v : values)
    if (!std::isfinite(v))
      throw std::invalid_argument("make_grid_function: non-finite value");
  return GridFunction{grid, std::move(values)};
}

DerivativeSamples derivative(const GridFunction& u, int ell) {
  const int n = u.grid.n;
  if (ell < 0) throw std::invalid_argument("derivative: order must be >= 0");
  if (ell > n - 2)
    throw std::invalid_argument("derivative: order exceeds n-2 for this grid");
  DerivativeSamples d;
  d.order = ell;
  d.values = u.values;
  const double h = u.grid.h;
  for (int k = 0; k < ell; ++k) {
    for (size_t i = 0; i + 1 < d.values.size(); ++i)
      d.values[i] = (d.values[i + 1] - d.values[i]) / h;
    d.values.pop_back();
  }
  d.grid.a = u.grid.a + 0.5 * ell * h;
  d.grid.b = u.grid.b - 0.5 * ell * h;
  d.grid.n = n - ell;
  d.grid.h = h;
  return d;
}

double integrate(const Grid1D& grid, const std::vector<double>& values) {
  if (static_cast<int>(values.size()) != grid.n)
    throw std::invalid_argument("integrate: values size does not match grid");
  double sum = 0.5 * (values.front() + values.back());
  for (int i = 1; i < grid.n - 1; ++i) sum += values[i];
  return grid.h * sum;
}

double integrate(const GridFunction& u) { return integrate(u.grid, u.values); }
double integrate(const DerivativeSamples& d) { return integrate(d.grid, d.values); }

std::vector<double> trapezoid_weights(const Grid1D& grid) {
  std::vector<double> w(grid.n, grid.h);
  w.front() = 0.5 * grid.h;
  w.back() = 0.5 * grid.h;
  return w;
}

void write_csv(const std::string& path, const GridFunction& u) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw std::runtime_error("write_csv: cannot open " + path);
  std::fputs("x,value\n", f);
  for (int i = 0; i < u.grid.n; ++i)
    std::fprintf(f, "%.17g,%.17g\n", u.grid.x(i), u.values[i]);
  std::fclose(f);
}

GridFunction read_csv(const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "r");
  if (!f) throw std::runtime_error("read_csv: cannot open " + path);
  char line[256];
  if (!std::fgets(line, sizeof line, f) || std::strncmp(line, "x,value", 7) != 0) {
    std::fclose(f);
    throw std::runtime_error("read_csv: missing 'x,value' header in " + path);
  }
  std::vector<double> xs, vs;
  while (std::fgets(line, sizeof line, f)) {
    if (line[0] == '\n' || line[0] == '\0') continue;
    double x, v;
    if (std::sscanf(line, "%lf,%lf", &x, &v) != 2) {
      std::fclose(f);
      throw std::runtime_error("read_csv: malformed row in " + path);
    }
    xs.push_back(x);
    vs.push_back(v);
  }
  std::fclose(f);
  if (xs.size() < 2) throw std::runtime_error("read_csv: need at least 2 rows in " + path);
  const int n = static_cast<int>(xs.size());
  Grid1D g = make_grid(xs.front(), xs.back(), n);
  const double tol = 1e-9 * std::max(1.0, std::abs(g.b - g.a));
  for (int i = 0; i < n; ++i)
    if (std::abs(xs[i] - g.x(i)) > tol)
      throw std::runtime_error("read_csv: nonuniform x spacing in " + path);
  return make_grid_function(g, std::move(vs));
}

}  // namespace fracwell
