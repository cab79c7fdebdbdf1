// Projected first-order minimization for the discrete energies: spectral
// (Barzilai-Borwein) steps with a monotone Armijo backtracking fallback.
// Pad nodes at both ends stay bit-equal to their prescribed values; an
// optional mass constraint int u = m is kept by an exact constant-shift
// projection on the free nodes after every accepted step.
#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fracwell/energy.hpp"
#include "fracwell/grid.hpp"

namespace fracwell {

struct Constraints {
  int pad_nodes = 0;  // P nodes held fixed at each end
  double left_value = -1.0;
  double right_value = 1.0;
  std::optional<double> mass;  // enforce int u = m when set
  int max_iters = 2000;
  double grad_tol = 1e-8;
  std::string trace_path;  // per-iteration CSV when nonempty
};

struct MinimizeResult {
  GridFunction u;
  EnergyBreakdown breakdown;
  double grad_inf_norm = 0.0;  // over free nodes, reduced when mass is set
  int iterations = 0;
  // true when grad_tol was met, or when successive energy decreases fell
  // below the rounding resolution of the energy value itself (no better
  // point is certifiable in double precision)
  bool converged = false;
};

MinimizeResult minimize(const EnergyModel& model, const GridFunction& u0,
                       const Constraints& c);

// Same solver on a caller-supplied objective; lets the descent loop be
// checked on convex model problems where the minimizer is known.
struct Objective {
  std::function<double(const std::vector<double>&)> value;
  std::function<std::vector<double>(const std::vector<double>&)> gradient;
};

MinimizeResult minimize_objective(const Objective& f, const Grid1D& grid,
                                  const std::vector<double>& u0,
                                  const Constraints& c);

}  // namespace fracwell
