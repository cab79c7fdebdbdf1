#include "fracwell/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace fracwell {

namespace {

constexpr double kArmijo = 1e-4;
constexpr int kMaxHalvings = 40;
constexpr int kStallLimit = 10;

struct Tracer {
  std::FILE* f = nullptr;
  explicit Tracer(const std::string& path) {
    if (path.empty()) return;
    f = std::fopen(path.c_str(), "w");
    if (!f) throw std::runtime_error("minimize: cannot open trace " + path);
    std::fprintf(f, "iter,total,well,seminorm,grad_inf,step\n");
  }
  ~Tracer() {
    if (f) std::fclose(f);
  }
  void row(int iter, const EnergyBreakdown& b, double ginf, double step) {
    if (!f) return;
    std::fprintf(f, "%d,%.17g,%.17g,%.17g,%.17g,%.17g\n", iter, b.total,
                 b.well_term, b.seminorm_term, ginf, step);
  }
};

struct Workspace {
  int n = 0;
  int pad = 0;                    // free index range [pad, n-pad)
  std::vector<double> weights;    // trapezoid weights for the mass integral
  std::optional<double> mass;
  double free_weight_sum = 0.0;   // sum of weights over free nodes
  double free_weight_sq = 0.0;

  int free_lo() const { return pad; }
  int free_hi() const { return n - pad; }

  // exact constant-shift restoration of int u = m on the free nodes
  void project_mass(std::vector<double>* u) const {
    if (!mass) return;
    double integral = 0.0;
    for (int i = 0; i < n; ++i) integral += weights[i] * (*u)[i];
    const double shift = (*mass - integral) / free_weight_sum;
    for (int i = free_lo(); i < free_hi(); ++i) (*u)[i] += shift;
  }

  // zero the pad entries; with mass set, also remove the component along
  // the constraint normal so the step stays in the tangent space
  void reduce_gradient(std::vector<double>* g) const {
    for (int i = 0; i < pad; ++i) (*g)[i] = 0.0;
    for (int i = free_hi(); i < n; ++i) (*g)[i] = 0.0;
    if (!mass) return;
    double wg = 0.0;
    for (int i = free_lo(); i < free_hi(); ++i) wg += weights[i] * (*g)[i];
    const double lambda = wg / free_weight_sq;
    for (int i = free_lo(); i < free_hi(); ++i) (*g)[i] -= lambda * weights[i];
  }

  double inf_norm_free(const std::vector<double>& g) const {
    double m = 0.0;
    for (int i = free_lo(); i < free_hi(); ++i) m = std::max(m, std::abs(g[i]));
    return m;
  }
};

using ValueFn = std::function<double(const std::vector<double>&)>;
using GradFn = std::function<std::vector<double>(const std::vector<double>&)>;
using BreakdownFn = std::function<EnergyBreakdown(const std::vector<double>&)>;

struct CoreResult {
  std::vector<double> u;
  double grad_inf = 0.0;
  int iterations = 0;
  bool converged = false;
};

CoreResult descend(const ValueFn& value, const GradFn& grad,
                   const BreakdownFn& breakdown, std::vector<double> u,
                   const Workspace& ws, const Constraints& c, Tracer& trace) {
  ws.project_mass(&u);
  double E = value(u);
  if (!std::isfinite(E))
    throw std::runtime_error("minimize: non-finite energy at the initial point");
  std::vector<double> g = grad(u);
  ws.reduce_gradient(&g);
  double ginf = ws.inf_norm_free(g);
  trace.row(0, breakdown(u), ginf, 0.0);

  double alpha = 1.0 / std::max(1.0, ginf);  // deterministic first step
  std::vector<double> trial(u.size());
  CoreResult out;
  int stall = 0;

  for (int iter = 1; iter <= c.max_iters; ++iter) {
    if (ginf <= c.grad_tol) {
      out.converged = true;
      break;
    }
    double gg = 0.0;
    for (double t : g) gg += t * t;

    double step = alpha;
    double Et = 0.0;
    bool accepted = false;
    for (int halving = 0; halving <= kMaxHalvings; ++halving) {
      trial = u;
      for (size_t i = 0; i < u.size(); ++i) trial[i] -= step * g[i];
      ws.project_mass(&trial);
      Et = value(trial);
      if (std::isfinite(Et) && Et <= E - kArmijo * step * gg) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      out.iterations = iter - 1;  // no step taken this round
      break;
    }

    // decreases below the rounding resolution of E mean the iterate sits
    // at the double-precision floor; a short run of them is as converged
    // as this arithmetic can certify, whatever grad_tol asks for
    const double resolution =
        8.0 * std::numeric_limits<double>::epsilon() * std::abs(E);
    stall = (E - Et <= resolution) ? stall + 1 : 0;

    std::vector<double> g_new = grad(trial);
    ws.reduce_gradient(&g_new);

    // BB1 spectral step from the accepted displacement
    double sy = 0.0, ss = 0.0;
    for (size_t i = 0; i < u.size(); ++i) {
      const double du = trial[i] - u[i];
      sy += du * (g_new[i] - g[i]);
      ss += du * du;
    }
    alpha = (sy > 0.0) ? std::clamp(ss / sy, 1e-8, 1e8) : 1.0 / std::max(1.0, ginf);

    u.swap(trial);
    g = std::move(g_new);
    E = Et;
    ginf = ws.inf_norm_free(g);
    out.iterations = iter;
    trace.row(iter, breakdown(u), ginf, step);
    if (stall >= kStallLimit) {
      out.converged = true;
      break;
    }
  }

  out.u = std::move(u);
  out.grad_inf = ginf;
  if (ginf <= c.grad_tol) out.converged = true;
  return out;
}

Workspace make_workspace(const Grid1D& grid, const Constraints& c) {
  if (c.pad_nodes < 0) throw std::invalid_argument("minimize: negative pad_nodes");
  if (2 * c.pad_nodes >= grid.n)
    throw std::invalid_argument("minimize: pads cover the whole grid");
  if (c.max_iters <= 0) throw std::invalid_argument("minimize: max_iters must be positive");
  if (!(c.grad_tol > 0.0)) throw std::invalid_argument("minimize: grad_tol must be positive");
  Workspace ws;
  ws.n = grid.n;
  ws.pad = c.pad_nodes;
  ws.mass = c.mass;
  ws.weights = trapezoid_weights(grid);
  for (int i = ws.free_lo(); i < ws.free_hi(); ++i) {
    ws.free_weight_sum += ws.weights[i];
    ws.free_weight_sq += ws.weights[i] * ws.weights[i];
  }
  return ws;
}

std::vector<double> apply_pads(std::vector<double> u, const Constraints& c, int n) {
  for (int i = 0; i < c.pad_nodes; ++i) {
    u[i] = c.left_value;
    u[n - 1 - i] = c.right_value;
  }
  return u;
}

}  // namespace

MinimizeResult minimize(const EnergyModel& model, const GridFunction& u0,
                       const Constraints& c) {
  if (!same_grid(u0.grid, model.grid()))
    throw std::invalid_argument("minimize: u0 is not on the model grid");
  const Workspace ws = make_workspace(model.grid(), c);
  Tracer trace(c.trace_path);

  const auto value = [&](const std::vector<double>& u) {
    return model.energy(u).total;
  };
  const auto grad = [&](const std::vector<double>& u) { return model.gradient(u); };
  const auto breakdown = [&](const std::vector<double>& u) {
    return model.energy(u);
  };

  CoreResult core = descend(value, grad, breakdown,
                            apply_pads(u0.values, c, model.grid().n), ws, c, trace);
  MinimizeResult res;
  res.breakdown = model.energy(core.u);
  res.u = GridFunction{model.grid(), std::move(core.u)};
  res.grad_inf_norm = core.grad_inf;
  res.iterations = core.iterations;
  res.converged = core.converged;
  return res;
}

MinimizeResult minimize_objective(const Objective& f, const Grid1D& grid,
                                  const std::vector<double>& u0,
                                  const Constraints& c) {
  if (u0.size() != static_cast<size_t>(grid.n))
    throw std::invalid_argument("minimize: u0 size mismatch");
  const Workspace ws = make_workspace(grid, c);
  Tracer trace(c.trace_path);
  const auto breakdown = [&](const std::vector<double>& u) {
    EnergyBreakdown b;
    b.total = f.value(u);
    return b;
  };
  CoreResult core = descend(f.value, f.gradient, breakdown,
                            apply_pads(u0, c, grid.n), ws, c, trace);
  MinimizeResult res;
  res.breakdown = breakdown(core.u);
  res.u = GridFunction{grid, std::move(core.u)};
  res.grad_inf_norm = core.grad_inf;
  res.iterations = core.iterations;
  res.converged = core.converged;
  return res;
}

}  // namespace fracwell
