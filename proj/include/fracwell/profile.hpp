// Optimal transition-profile constants.  The computable object is the
// truncated problem: minimize the eps = 1 energy over functions equal to
// -1 left of -T and +1 right of T, on a computational domain slightly
// wider than [-T, T], with analytic tail corrections accounting for the
// constant continuation beyond the domain edge (extension value +-1 for
// k = 0, zero k-th derivative for k >= 1).  A T-sweep exposes the outer
// infimum; the plateau value is reported as the profile constant.
#pragma once

#include <vector>

#include "fracwell/energy.hpp"
#include "fracwell/grid.hpp"
#include "fracwell/potential.hpp"

namespace fracwell {

struct ProfileProblem {
  FractionalOrder order;
  DoubleWell well;
  double T = 20.0;                 // pads outside [-T, T]
  double domain_half_width = 21.0; // computational domain (-L, L), L >= T
  int n = 1051;
  bool normalized = false;
};

struct ProfileResult {
  double m_hat = 0.0;
  GridFunction profile;
  EnergyBreakdown breakdown;
  double T = 0.0;
  int n = 0;
  bool converged = false;
};

// Defaults tuned so h = T/500 and the margin holds a few pad nodes.
ProfileProblem default_profile_problem(int k, double s);

// Minimizes from the multi-start family tanh(x/w), w in {0.5, 1, 2},
// and returns the best final energy.
ProfileResult solve_profile(const ProfileProblem& p);

struct SweepRow {
  double s = 0.0;
  double T = 0.0;
  int n = 0;
  double m_hat = 0.0;
  double well_term = 0.0;
  double seminorm_term = 0.0;
  bool converged = false;
};

// One solve per s, rows in input order.  Near the integer ends
// (s < 0.3 or s > 0.8) each solve is repeated once at doubled resolution
// and both rows are emitted, so discretization drift stays visible.
std::vector<SweepRow> sweep_s(int k, const std::vector<double>& s_list,
                              bool normalized, double T, int n);

struct TSweepRow {
  double T = 0.0;
  int n = 0;
  double m_hat = 0.0;
  double well_term = 0.0;
  double seminorm_term = 0.0;
  bool converged = false;
};

// Shared grid density: each T gets the margin ratio and spacing of p,
// with n scaled accordingly.  T_list must be strictly increasing.
std::vector<TSweepRow> sweep_T(const ProfileProblem& p,
                               const std::vector<double>& T_list);

}  // namespace fracwell
