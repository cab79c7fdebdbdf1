#include "fracwell/potential.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <memory>
#include <stdexcept>

#include "fracwell/kernels.hpp"

namespace fracwell {

double well_floor(double z, double beta) {
  const double lo = (z + 1.0) * (z + 1.0);
  const double hi = (z - 1.0) * (z - 1.0);
  return std::min(std::min(lo, hi), beta);
}

DoubleWell quartic_well() {
  DoubleWell w;
  w.eval = [](double z) {
    const double t = 1.0 - z * z;
    return t * t;
  };
  w.deriv = [](double z) { return -4.0 * z * (1.0 - z * z); };
  w.eval_many = [](const double* z, double* out, std::size_t n) {
    kern::quartic_w(z, out, n);
  };
  w.deriv_many = [](const double* z, double* out, std::size_t n) {
    kern::quartic_dw(z, out, n);
  };
  // floor ratio is (1+|z|)^2 on |z|<=2 (minimum 1 at z=0) and W/1 >= 9
  // beyond; near-well ratio peaks at |z| = 1 + eta_bar.
  w.alpha_W = 1.0;
  w.beta_W = 1.0;
  w.gamma_W = 6.25;
  w.eta_bar = 0.5;
  w.name = "quartic";
  return w;
}

HypothesisReport check_hypotheses(const DoubleWell& w, double z_min, double z_max,
                                  int n_samples) {
  if (n_samples < 100)
    throw std::invalid_argument("check_hypotheses: need n_samples >= 100");
  if (!(z_min < -1.0 - w.eta_bar) || !(z_max > 1.0 + w.eta_bar))
    throw std::invalid_argument(
        "check_hypotheses: sample range must cover both wells plus eta_bar");

  HypothesisReport rep;
  rep.ok = true;
  double fitted_alpha = HUGE_VAL;
  double fitted_gamma = 0.0;
  const double step = (z_max - z_min) / (n_samples - 1);
  for (int i = 0; i < n_samples; ++i) {
    const double z = z_min + i * step;
    const double W = w.eval(z);
    if (!std::isfinite(W)) {
      rep.ok = false;
      rep.witness = z;
      rep.message = "non-finite well value";
      return rep;
    }
    const double floor = well_floor(z, w.beta_W);
    if (floor > 0.0) {
      fitted_alpha = std::min(fitted_alpha, W / floor);
      if (W + 1e-12 * std::max(1.0, std::abs(W)) < w.alpha_W * floor && rep.ok) {
        rep.ok = false;
        rep.witness = z;
        rep.message = "lower growth bound fails";
      }
    } else if (W < -1e-12) {
      rep.ok = false;
      rep.witness = z;
      rep.message = "negative well value at a minimum point";
    }
    if (std::abs(std::abs(z) - 1.0) <= w.eta_bar) {
      const double msq = std::min((z + 1.0) * (z + 1.0), (z - 1.0) * (z - 1.0));
      if (msq > 1e-14) {
        fitted_gamma = std::max(fitted_gamma, W / msq);
        if (W > w.gamma_W * msq + 1e-12 * std::max(1.0, std::abs(W)) && rep.ok) {
          rep.ok = false;
          rep.witness = z;
          rep.message = "upper growth bound fails near a well";
        }
      }
    }
  }
  rep.fitted_alpha = fitted_alpha;
  rep.fitted_gamma = fitted_gamma;
  if (rep.ok) rep.message = "ok";
  return rep;
}

namespace {

struct WellTable {
  std::vector<double> z, W, dW;
};

// cubic Hermite on [z_i, z_i+1] from endpoint values and slopes
double hermite(const WellTable& t, double z, bool deriv) {
  const auto& zs = t.z;
  size_t k;
  if (z <= zs.front())
    k = 0;
  else if (z >= zs.back())
    k = zs.size() - 2;
  else
    k = static_cast<size_t>(std::upper_bound(zs.begin(), zs.end(), z) - zs.begin()) - 1;
  const double h = zs[k + 1] - zs[k];
  const double u = (z - zs[k]) / h;
  const double u2 = u * u, u3 = u2 * u;
  const double h00 = 2 * u3 - 3 * u2 + 1, h10 = u3 - 2 * u2 + u;
  const double h01 = -2 * u3 + 3 * u2, h11 = u3 - u2;
  if (!deriv)
    return h00 * t.W[k] + h * h10 * t.dW[k] + h01 * t.W[k + 1] + h * h11 * t.dW[k + 1];
  const double d00 = (6 * u2 - 6 * u) / h, d10 = 3 * u2 - 4 * u + 1;
  const double d01 = (-6 * u2 + 6 * u) / h, d11 = 3 * u2 - 2 * u;
  return d00 * t.W[k] + d10 * t.dW[k] + d01 * t.W[k + 1] + d11 * t.dW[k + 1];
}

}  // namespace

DoubleWell tabulated_well(const std::string& csv_path, double eta_bar) {
  std::FILE* f = std::fopen(csv_path.c_str(), "r");
  if (!f) throw std::runtime_error("tabulated_well: cannot open " + csv_path);
  char line[256];
  if (!std::fgets(line, sizeof line, f) || std::strncmp(line, "z,W,dW", 6) != 0) {
    std::fclose(f);
    throw std::runtime_error("tabulated_well: missing 'z,W,dW' header");
  }
  auto table = std::make_shared<WellTable>();
  while (std::fgets(line, sizeof line, f)) {
    if (line[0] == '\n' || line[0] == '\0') continue;
    double z, W, dW;
    if (std::sscanf(line, "%lf,%lf,%lf", &z, &W, &dW) != 3) {
      std::fclose(f);
      throw std::runtime_error("tabulated_well: malformed row");
    }
    if (!(std::isfinite(z) && std::isfinite(W) && std::isfinite(dW))) {
      std::fclose(f);
      throw std::runtime_error("tabulated_well: non-finite table entry");
    }
    table->z.push_back(z);
    table->W.push_back(W);
    table->dW.push_back(dW);
  }
  std::fclose(f);
  if (table->z.size() < 4)
    throw std::runtime_error("tabulated_well: need at least 4 rows");
  for (size_t i = 0; i + 1 < table->z.size(); ++i)
    if (!(table->z[i] < table->z[i + 1]))
      throw std::runtime_error("tabulated_well: z column must be strictly increasing");
  if (!(table->z.front() < -1.0 - eta_bar) || !(table->z.back() > 1.0 + eta_bar))
    throw std::runtime_error("tabulated_well: table must cover [-1-eta_bar, 1+eta_bar]");

  DoubleWell w;
  w.eval = [table](double z) { return hermite(*table, z, false); };
  w.deriv = [table](double z) { return hermite(*table, z, true); };
  w.eta_bar = eta_bar;
  w.name = "tabulated:" + csv_path;

  // the wells themselves must vanish or no finite upper constant exists
  if (std::abs(w.eval(-1.0)) > 1e-8 || std::abs(w.eval(1.0)) > 1e-8)
    throw std::runtime_error("tabulated_well: W must vanish at z = -1 and z = 1");

  // fit constants on the table range, then re-check against them
  DoubleWell probe = w;
  probe.alpha_W = 0.0;
  probe.beta_W = 1.0;
  probe.gamma_W = HUGE_VAL;
  HypothesisReport fit =
      check_hypotheses(probe, table->z.front(), table->z.back(), 4001);
  if (!fit.ok || !(fit.fitted_alpha > 0.0) || !std::isfinite(fit.fitted_gamma))
    throw std::runtime_error("tabulated_well: growth hypotheses fail: " + fit.message);
  w.alpha_W = fit.fitted_alpha * (1.0 - 1e-10);
  w.beta_W = 1.0;
  w.gamma_W = fit.fitted_gamma * (1.0 + 1e-10);
  HypothesisReport chk = check_hypotheses(w, table->z.front(), table->z.back(), 4001);
  if (!chk.ok)
    throw std::runtime_error("tabulated_well: growth hypotheses fail: " + chk.message);
  return w;
}

}  // namespace fracwell
