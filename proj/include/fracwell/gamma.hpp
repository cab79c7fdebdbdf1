// Sharp-interface experiments and diagnostics: glued-profile recovery
// construction, kernel block decompositions across a domain partition,
// transition-interval counting on the piecewise-linear interpolant, an
// eps-sweep of constrained minimizations, and empirical-constant reports
// for the interpolation and L2 inequalities.
#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "fracwell/energy.hpp"
#include "fracwell/grid.hpp"
#include "fracwell/profile.hpp"

namespace fracwell {

// Piecewise-constant jump function with values alternating in {-1, +1}.
struct StepFunction {
  std::vector<double> jump_points;  // strictly increasing, interior
  double left_value = -1.0;         // value before the first jump
};

// Value at t; at a jump point the right limit is returned.
double step_value(const StepFunction& u, double t);

// Glue scaled copies of the truncated profile at the jumps: inside window
// |t - t_i| <= eps*T the value is the profile at (t - t_i)/eps (reflected
// for descending jumps), outside all windows exactly +-1.  Windows must
// be pairwise disjoint and contained in the domain.
GridFunction build_recovery(const StepFunction& u, const ProfileResult& profile,
                            double eps, const Grid1D& grid);

// Block decomposition of the (tail-free) seminorm term over the partition
// a < cut_points... < b, cut points snapped to grid nodes.  Entry (i, j)
// is one ordered copy of the kernel integral over block-pair (i, j),
// scaled like the seminorm term, so the full matrix sums to it exactly.
// On the integer branch the matrix is diagonal.  For k >= 1 the blocks
// live on the staggered grid, shifted k h / 2 from the base cuts.
std::vector<std::vector<double>> cross_term(const GridFunction& u_eps,
                                            const EnergyConfig& cfg,
                                            const std::vector<double>& cut_points);

struct TransitionReport {
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  // node index brackets (segment of entry crossing, node after exit)
  std::vector<std::pair<int, int>> intervals;
  int count = 0;
};

// Maximal intervals where the piecewise-linear interpolant stays strictly
// inside (lambda1, lambda2) while attaining both thresholds at the ends,
// in either order.  Crossings are located by linear interpolation;
// tangential touches without a sign change do not split a run.
TransitionReport count_transitions(const GridFunction& u, double lambda1,
                                   double lambda2);

struct ExperimentRow {
  double eps = 0.0;
  double total = 0.0;
  double per_jump = 0.0;
  double l1_dist = 0.0;
  int transitions = 0;
  bool converged = false;
};

// Per eps (decreasing list): minimize the energy with pads matching the
// step's outer values, initialized from build_recovery, and report the
// energy per jump, the L1 distance to the step, and the transition count
// for the band (-1/2, 1/2).  The profile is solved once, with T chosen
// so the largest eps still fits every window.
std::vector<ExperimentRow> gamma_experiment(const StepFunction& u,
                                            const EnergyConfig& cfg_template,
                                            const std::vector<double>& eps_list);

struct CheckReport {
  FractionalOrder order;
  int ell = 0;
  int samples = 0;
  std::uint64_t seed = 0;
  double max_ratio = 0.0;
};

// Empirical constant for || u^(l) || <= R (||u|| + ||u||^theta [u]^(1-theta)),
// theta = 1 - l/(k+s), over seeded random trigonometric polynomials on
// (0, 1); reports the max observed LHS/RHS-without-R.
CheckReport check_interpolation(const FractionalOrder& order, int ell,
                                int samples, std::uint64_t seed = 20250815);

// Empirical constant for ||u|| <= C(|int_J u| + [u]_s) with J the middle
// half of (0, 1); same random family.
CheckReport check_l2_bound(double s, int samples, std::uint64_t seed = 20250815);

}  // namespace fracwell
