#include "fracwell/profile.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "fracwell/optimize.hpp"

namespace fracwell {

ProfileProblem default_profile_problem(int k, double s) {
  ProfileProblem p;
  p.order = FractionalOrder{k, s};
  p.well = quartic_well();
  p.T = 20.0;
  p.domain_half_width = 21.0;
  p.n = 1051;  // h = 0.04 = T/500
  return p;
}

ProfileResult solve_profile(const ProfileProblem& p) {
  validate_order(p.order);
  if (!(p.T > 0.0)) throw std::invalid_argument("profile: T must be positive");
  if (!(p.domain_half_width >= p.T))
    throw std::invalid_argument("profile: domain must cover [-T, T]");
  if (p.n < 8) throw std::invalid_argument("profile: n too small");
  const double L = p.domain_half_width;
  const double h = 2.0 * L / (p.n - 1);
  if (!(h <= p.T / 50.0))
    throw std::invalid_argument("profile: grid too coarse, need h <= T/50");

  EnergyConfig cfg;
  cfg.order = p.order;
  cfg.eps = 1.0;
  cfg.well = p.well;
  cfg.normalized = p.normalized;
  cfg.grid = make_grid(-L, L, p.n);
  if (p.order.s > 0.0) {
    cfg.tail_T = L;
    if (p.order.k == 0) {
      cfg.tail_c_left = -1.0;
      cfg.tail_c_right = 1.0;
    }
  }
  const EnergyModel model(cfg);

  Constraints c;
  c.pad_nodes = static_cast<int>(std::floor((L - p.T) / h + 1e-9)) + 1;
  c.pad_nodes = std::max(c.pad_nodes, p.order.k + 1);
  c.left_value = -1.0;
  c.right_value = 1.0;
  c.max_iters = 5000;
  c.grad_tol = 1e-7;

  ProfileResult best;
  best.m_hat = std::numeric_limits<double>::infinity();
  for (double w : {0.5, 1.0, 2.0}) {
    std::vector<double> u0(p.n);
    for (int i = 0; i < p.n; ++i) u0[i] = std::tanh(cfg.grid.x(i) / w);
    MinimizeResult r = minimize(model, GridFunction{cfg.grid, std::move(u0)}, c);
    // prefer converged results; among equals, lower energy wins
    const bool better = (r.converged && !best.converged) ||
                        (r.converged == best.converged &&
                         r.breakdown.total < best.m_hat);
    if (better) {
      best.m_hat = r.breakdown.total;
      best.profile = std::move(r.u);
      best.breakdown = r.breakdown;
      best.converged = r.converged;
    }
  }
  best.T = p.T;
  best.n = p.n;
  return best;
}

namespace {

SweepRow row_from(const ProfileResult& r, double s) {
  SweepRow row;
  row.s = s;
  row.T = r.T;
  row.n = r.n;
  row.m_hat = r.m_hat;
  row.well_term = r.breakdown.well_term;
  row.seminorm_term = r.breakdown.seminorm_term;
  row.converged = r.converged;
  return row;
}

}  // namespace

std::vector<SweepRow> sweep_s(int k, const std::vector<double>& s_list,
                              bool normalized, double T, int n) {
  std::vector<SweepRow> rows;
  for (double s : s_list) {
    ProfileProblem p = default_profile_problem(k, s);
    p.T = T;
    p.domain_half_width = 1.05 * T;
    p.n = n;
    p.normalized = normalized;
    const bool edge = s > 0.0 && (s < 0.3 || s > 0.8);
    for (int pass = 0; pass < (edge ? 2 : 1); ++pass) {
      if (pass == 1) p.n = 2 * n - 1;  // halves h exactly, nodes nest
      SweepRow row;
      try {
        row = row_from(solve_profile(p), s);
      } catch (const std::exception&) {
        row.s = s;
        row.T = T;
        row.n = p.n;
        row.m_hat = std::numeric_limits<double>::quiet_NaN();
        row.converged = false;
      }
      rows.push_back(row);
    }
  }
  return rows;
}

std::vector<TSweepRow> sweep_T(const ProfileProblem& p,
                               const std::vector<double>& T_list) {
  if (T_list.empty())
    throw std::invalid_argument("sweep_T: T_list must not be empty");
  for (size_t i = 1; i < T_list.size(); ++i)
    if (!(T_list[i] > T_list[i - 1]))
      throw std::invalid_argument("sweep_T: T_list must be strictly increasing");
  const double margin_ratio = p.domain_half_width / p.T;
  const double h0 = 2.0 * p.domain_half_width / (p.n - 1);
  std::vector<TSweepRow> rows;
  for (double T : T_list) {
    ProfileProblem q = p;
    q.T = T;
    q.domain_half_width = margin_ratio * T;
    q.n = 1 + static_cast<int>(std::lround(2.0 * q.domain_half_width / h0));
    TSweepRow row;
    row.T = T;
    row.n = q.n;
    try {
      const ProfileResult r = solve_profile(q);
      row.m_hat = r.m_hat;
      row.well_term = r.breakdown.well_term;
      row.seminorm_term = r.breakdown.seminorm_term;
      row.converged = r.converged;
    } catch (const std::exception&) {
      row.m_hat = std::numeric_limits<double>::quiet_NaN();
      row.converged = false;
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace fracwell
