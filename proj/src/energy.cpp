#include "fracwell/energy.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "fracwell/kernels.hpp"

namespace fracwell {

void validate_order(const FractionalOrder& order) {
  if (order.k < 0) throw std::invalid_argument("order: k must be nonnegative");
  if (!(order.s >= 0.0 && order.s < 1.0))
    throw std::invalid_argument("order: s must lie in [0, 1)");
  if (!(order.k + order.s > 0.5))
    throw std::invalid_argument("order: requires k + s > 1/2");
}

double norm_factor(double s) {
  if (!(s > 0.0 && s < 1.0))
    throw std::invalid_argument("norm_factor: s must lie in (0, 1)");
  return s * (1.0 - s) * std::exp2(s - 1.0);
}

namespace {

// k-fold forward difference in place, size shrinks by one per pass
void kdiff(const std::vector<double>& u, int k, double h, std::vector<double>* v) {
  *v = u;
  for (int pass = 0; pass < k; ++pass) {
    const size_t m = v->size() - 1;
    for (size_t i = 0; i < m; ++i) (*v)[i] = ((*v)[i + 1] - (*v)[i]) / h;
    v->resize(m);
  }
}

// adjoint of kdiff, growing from the staggered size back to n
std::vector<double> kdiff_adjoint(std::vector<double> z, int k, double h) {
  for (int pass = 0; pass < k; ++pass) {
    const size_t m = z.size();
    std::vector<double> t(m + 1);
    t[0] = -z[0] / h;
    for (size_t i = 1; i < m; ++i) t[i] = (z[i - 1] - z[i]) / h;
    t[m] = z[m - 1] / h;
    z = std::move(t);
  }
  return z;
}

void well_values(const DoubleWell& w, const double* z, double* out, size_t n) {
  if (w.eval_many) {
    w.eval_many(z, out, n);
    return;
  }
  for (size_t i = 0; i < n; ++i) out[i] = w.eval(z[i]);
}

void well_derivs(const DoubleWell& w, const double* z, double* out, size_t n) {
  if (w.deriv_many) {
    w.deriv_many(z, out, n);
    return;
  }
  for (size_t i = 0; i < n; ++i) out[i] = w.deriv(z[i]);
}

}  // namespace

EnergyModel::EnergyModel(EnergyConfig cfg) : cfg_(std::move(cfg)) {
  validate_order(cfg_.order);
  if (!(cfg_.eps > 0.0)) throw std::invalid_argument("energy: eps must be positive");
  const int k = cfg_.order.k;
  const double s = cfg_.order.s;
  if (cfg_.grid.n - k < 2)
    throw std::invalid_argument("energy: k too large for the grid");
  if (cfg_.normalized && !(s > 0.0 && s < 1.0))
    throw std::invalid_argument("energy: normalized requires 0 < s < 1");
  if (cfg_.forcing && !same_grid(cfg_.forcing->grid, cfg_.grid))
    throw std::invalid_argument("energy: forcing grid mismatch");
  if (!cfg_.well.eval || !cfg_.well.deriv)
    throw std::invalid_argument("energy: well lacks eval/deriv");

  fractional_ = s > 0.0;
  stag_grid_.a = cfg_.grid.a + 0.5 * k * cfg_.grid.h;
  stag_grid_.n = cfg_.grid.n - k;
  stag_grid_.h = cfg_.grid.h;
  stag_grid_.b = stag_grid_.a + (stag_grid_.n - 1) * stag_grid_.h;
  base_weights_ = trapezoid_weights(cfg_.grid);
  stag_weights_ = trapezoid_weights(stag_grid_);
  eps_power_ = std::pow(cfg_.eps, 2.0 * (k + s) - 1.0);
  factor_ = cfg_.normalized ? norm_factor(s) : 1.0;

  if (fractional_) {
    if (cfg_.tail_T) {
      // the extension constants describe u itself; for k >= 1 the k-th
      // derivative of a constant extension vanishes, so the difference
      // field continues by zero
      const double t_stag = *cfg_.tail_T - 0.5 * k * cfg_.grid.h;
      const double cl = (k == 0) ? cfg_.tail_c_left : 0.0;
      const double cr = (k == 0) ? cfg_.tail_c_right : 0.0;
      form_ = assemble_form(stag_grid_, s, t_stag, cl, cr);
    } else {
      form_ = assemble_form(stag_grid_, s);
    }
  }
  // on the integer branch a constant extension has zero k-th derivative
  // outside the domain, so a configured tail adds nothing
}

EnergyBreakdown EnergyModel::energy(const std::vector<double>& u) const {
  const size_t n = cfg_.grid.n;
  if (u.size() != n) throw std::invalid_argument("energy: size mismatch");
  EnergyBreakdown out;

  std::vector<double> w(n);
  well_values(cfg_.well, u.data(), w.data(), n);
  out.well_term = kern::dot(w.data(), base_weights_.data(), n) / cfg_.eps;

  std::vector<double> v;
  kdiff(u, cfg_.order.k, cfg_.grid.h, &v);
  if (fractional_) {
    out.seminorm_term = factor_ * eps_power_ * seminorm(form_, v);
  } else {
    double acc = 0.0;
    for (size_t i = 0; i < v.size(); ++i) acc += stag_weights_[i] * v[i] * v[i];
    out.seminorm_term = eps_power_ * acc;
  }

  if (cfg_.forcing) {
    double acc = 0.0;
    const auto& f = cfg_.forcing->values;
    for (size_t i = 0; i < n; ++i) acc += base_weights_[i] * f[i] * u[i];
    out.forcing_term = -acc;
  }
  out.total = out.well_term + out.seminorm_term + out.forcing_term;
  return out;
}

std::vector<double> EnergyModel::gradient(const std::vector<double>& u) const {
  const size_t n = cfg_.grid.n;
  if (u.size() != n) throw std::invalid_argument("gradient: size mismatch");

  std::vector<double> g(n);
  well_derivs(cfg_.well, u.data(), g.data(), n);
  for (size_t i = 0; i < n; ++i) g[i] *= base_weights_[i] / cfg_.eps;

  std::vector<double> v;
  kdiff(u, cfg_.order.k, cfg_.grid.h, &v);
  std::vector<double> gv;
  if (fractional_) {
    gv = seminorm_gradient(form_, v);
    const double c = factor_ * eps_power_;
    for (double& t : gv) t *= c;
  } else {
    gv.resize(v.size());
    for (size_t i = 0; i < v.size(); ++i)
      gv[i] = 2.0 * eps_power_ * stag_weights_[i] * v[i];
  }
  const std::vector<double> ga = kdiff_adjoint(std::move(gv), cfg_.order.k, cfg_.grid.h);
  for (size_t i = 0; i < n; ++i) g[i] += ga[i];

  if (cfg_.forcing) {
    const auto& f = cfg_.forcing->values;
    for (size_t i = 0; i < n; ++i) g[i] -= base_weights_[i] * f[i];
  }
  return g;
}

EnergyBreakdown energy(const EnergyConfig& cfg, const GridFunction& u) {
  if (!same_grid(u.grid, cfg.grid))
    throw std::invalid_argument("energy: u is not on the config grid");
  return EnergyModel(cfg).energy(u.values);
}

GridFunction gradient(const EnergyConfig& cfg, const GridFunction& u) {
  if (!same_grid(u.grid, cfg.grid))
    throw std::invalid_argument("gradient: u is not on the config grid");
  return GridFunction{cfg.grid, EnergyModel(cfg).gradient(u.values)};
}

}  // namespace fracwell
