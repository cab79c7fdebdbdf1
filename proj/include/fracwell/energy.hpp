// Scaled phase-transition energies on a grid:
//
//   E(u) = (1/eps) int_I W(u) + c * eps^{2(k+s)-1} * [D^k u]_s^2  - int_I f u
//
// with c = s(1-s)/2^{1-s} when the normalized flag is set and 1 otherwise.
// s = 0 selects the integer-order functional, where the nonlocal term is
// replaced by eps^{2k-1} int |u^(k)|^2.  The fractional seminorm acts on
// the k-th difference quotient samples, which live on a staggered grid;
// optional tail corrections extend those samples by constants beyond the
// staggered endpoints.
#pragma once

#include <optional>
#include <vector>

#include "fracwell/gagliardo.hpp"
#include "fracwell/grid.hpp"
#include "fracwell/potential.hpp"

namespace fracwell {

struct FractionalOrder {
  int k = 0;
  double s = 0.5;  // 0 selects the integer-order branch of order k
};

// requires k >= 0, s in [0,1), k + s > 1/2
void validate_order(const FractionalOrder& order);

double norm_factor(double s);  // s(1-s)/2^{1-s}, requires 0 < s < 1

struct EnergyConfig {
  FractionalOrder order;
  double eps = 1.0;
  DoubleWell well;
  bool normalized = false;
  Grid1D grid;
  // Constant extension of D^k u beyond +-(tail_T - k h / 2) on the
  // staggered grid; unset means the plain bounded-domain functional.
  std::optional<double> tail_T;
  double tail_c_left = 0.0;
  double tail_c_right = 0.0;
  std::optional<GridFunction> forcing;
};

struct EnergyBreakdown {
  double well_term = 0.0;
  double seminorm_term = 0.0;
  double forcing_term = 0.0;
  double total = 0.0;
};

// Holds the assembled seminorm form so repeated evaluations (the optimizer
// hot path) pay assembly cost once.  Pure after construction.
class EnergyModel {
 public:
  explicit EnergyModel(EnergyConfig cfg);

  const EnergyConfig& config() const { return cfg_; }
  const Grid1D& grid() const { return cfg_.grid; }

  EnergyBreakdown energy(const std::vector<double>& u) const;
  std::vector<double> gradient(const std::vector<double>& u) const;

  // seminorm form on the staggered grid; only valid on the fractional branch
  const SeminormForm& form() const { return form_; }
  bool fractional() const { return fractional_; }

 private:
  EnergyConfig cfg_;
  bool fractional_ = true;
  SeminormForm form_;                  // fractional branch only
  Grid1D stag_grid_;                   // grid of D^k u
  std::vector<double> base_weights_;   // trapezoid weights on cfg_.grid
  std::vector<double> stag_weights_;   // trapezoid weights on stag_grid_
  double eps_power_ = 1.0;             // eps^{2(k+s)-1}
  double factor_ = 1.0;                // norm_factor(s) or 1
};

// One-shot conveniences matching the model above.
EnergyBreakdown energy(const EnergyConfig& cfg, const GridFunction& u);
GridFunction gradient(const EnergyConfig& cfg, const GridFunction& u);

}  // namespace fracwell
