// Double-well potentials and growth-hypothesis checking.
//
// A well is admissible when
//   (L)  W(z) >= alpha * min{(z+1)^2, (z-1)^2, beta}   for all z,
//   (U)  W(z) <= gamma * min{(z+1)^2, (z-1)^2}         for ||z|-1| <= eta_bar.
// check_hypotheses fits the tightest constants on a sample grid and
// reports a witness point when a stored constant fails.
#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace fracwell {

struct DoubleWell {
  std::function<double(double)> eval;   // W
  std::function<double(double)> deriv;  // W'
  // Optional batch paths used by the energy inner loops; when unset the
  // pointwise functions are looped.
  std::function<void(const double*, double*, std::size_t)> eval_many;
  std::function<void(const double*, double*, std::size_t)> deriv_many;
  double alpha_W = 0.0;                 // lower growth constant
  double beta_W = 0.0;                  // lower growth plateau
  double gamma_W = 0.0;                 // upper growth constant near the wells
  double eta_bar = 0.5;                 // half-width of the near-well band
  std::string name = "custom";
};

// W(z) = (1-z^2)^2 with analytic constants alpha=1, beta=1, gamma=25/4.
DoubleWell quartic_well();

// min{(z+1)^2, (z-1)^2, beta}
double well_floor(double z, double beta);

struct HypothesisReport {
  bool ok = false;
  double fitted_alpha = 0.0;  // largest alpha the samples allow
  double fitted_gamma = 0.0;  // smallest gamma the samples allow
  double witness = 0.0;       // sample where a stored constant fails
  std::string message;
};

// Samples [z_min, z_max] uniformly (n_samples >= 100 required) and checks
// the stored constants; requires z_min < -1-eta_bar and z_max > 1+eta_bar
// so both wells and the far field are covered.
HypothesisReport check_hypotheses(const DoubleWell& w, double z_min, double z_max,
                                  int n_samples);

// Reads a CSV table "z,W,dW" with strictly increasing z and builds a well
// by cubic Hermite interpolation (the tabulated derivative supplies the
// slopes).  Evaluation outside the table clamps to the end intervals'
// polynomials.  Constants must be certified by check_hypotheses before
// the well is used in an energy; tabulated_well runs the check itself and
// throws on failure.
DoubleWell tabulated_well(const std::string& csv_path, double eta_bar = 0.5);

}  // namespace fracwell
