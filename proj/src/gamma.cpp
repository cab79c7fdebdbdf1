#include "fracwell/gamma.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "fracwell/optimize.hpp"

namespace fracwell {

namespace {

void validate_step(const StepFunction& u) {
  if (std::abs(u.left_value) != 1.0)
    throw std::invalid_argument("step function: left_value must be -1 or +1");
  for (size_t i = 1; i < u.jump_points.size(); ++i)
    if (!(u.jump_points[i] > u.jump_points[i - 1]))
      throw std::invalid_argument("step function: jump points must increase");
}

double interp(const GridFunction& p, double x) {
  const Grid1D& g = p.grid;
  if (x <= g.a) return p.values.front();
  if (x >= g.b) return p.values.back();
  const double t = (x - g.a) / g.h;
  int i = static_cast<int>(t);
  if (i > g.n - 2) i = g.n - 2;
  const double theta = t - i;
  return (1.0 - theta) * p.values[i] + theta * p.values[i + 1];
}

}  // namespace

double step_value(const StepFunction& u, double t) {
  validate_step(u);
  const auto it = std::upper_bound(u.jump_points.begin(), u.jump_points.end(), t);
  const size_t passed = it - u.jump_points.begin();
  return (passed % 2 == 0) ? u.left_value : -u.left_value;
}

GridFunction build_recovery(const StepFunction& u, const ProfileResult& profile,
                            double eps, const Grid1D& grid) {
  validate_step(u);
  if (!(eps > 0.0)) throw std::invalid_argument("build_recovery: eps must be positive");
  if (profile.profile.values.empty())
    throw std::invalid_argument("build_recovery: empty profile");
  const double w = eps * profile.T;
  const auto& jp = u.jump_points;
  for (size_t i = 0; i < jp.size(); ++i) {
    if (jp[i] - w <= grid.a || jp[i] + w >= grid.b)
      throw std::invalid_argument("build_recovery: window exits the domain");
    if (i > 0 && jp[i] - jp[i - 1] <= 2.0 * w)
      throw std::invalid_argument("build_recovery: windows overlap");
  }

  GridFunction out{grid, std::vector<double>(grid.n)};
  size_t j = 0;  // index of the first jump with t_j + w >= x, advanced with x
  for (int i = 0; i < grid.n; ++i) {
    const double x = grid.x(i);
    while (j < jp.size() && x > jp[j] + w) ++j;
    if (j < jp.size() && x >= jp[j] - w) {
      // inside window j; ascending when the value before jump j is -1
      const double before = (j % 2 == 0) ? u.left_value : -u.left_value;
      const double xi = (x - jp[j]) / eps;
      out.values[i] = interp(profile.profile, before < 0.0 ? xi : -xi);
    } else {
      out.values[i] = (j % 2 == 0) ? u.left_value : -u.left_value;
    }
  }
  return out;
}

std::vector<std::vector<double>> cross_term(const GridFunction& u_eps,
                                            const EnergyConfig& cfg,
                                            const std::vector<double>& cut_points) {
  if (!same_grid(u_eps.grid, cfg.grid))
    throw std::invalid_argument("cross_term: function is not on the config grid");
  if (cfg.tail_T)
    throw std::invalid_argument("cross_term: tail corrections are not partitioned");
  const EnergyModel model(cfg);
  const Grid1D& g = cfg.grid;
  const int k = cfg.order.k;
  const double s = cfg.order.s;

  // snap cuts to interior nodes, keep them strictly increasing
  std::vector<int> nodes{0};
  for (double c : cut_points) {
    const int idx = static_cast<int>(std::lround((c - g.a) / g.h));
    if (idx <= nodes.back() || idx >= g.n - 1)
      throw std::invalid_argument("cross_term: cut points must be interior and ordered");
    nodes.push_back(idx);
  }
  nodes.push_back(g.n - 1);
  const size_t nb = nodes.size() - 1;

  std::vector<double> v = u_eps.values;
  for (int pass = 0; pass < k; ++pass) {
    for (size_t i = 0; i + 1 < v.size(); ++i) v[i] = (v[i + 1] - v[i]) / g.h;
    v.pop_back();
  }
  const double scale = (cfg.normalized ? norm_factor(s) : 1.0) *
                       std::pow(cfg.eps, 2.0 * (k + s) - 1.0);

  std::vector<std::vector<double>> I(nb, std::vector<double>(nb, 0.0));
  const Grid1D sg{g.a + 0.5 * k * g.h, g.b - 0.5 * k * g.h, g.n - k, g.h};

  if (s == 0.0) {
    // local term: diagonal blocks partition the trapezoid sum over the
    // staggered nodes (exclusive upper boundaries, clamped for k >= 1)
    const double scale0 = std::pow(cfg.eps, 2.0 * k - 1.0);
    const std::vector<double> tw = trapezoid_weights(sg);
    std::vector<int> bnd(nb + 1, 0);
    bnd[nb] = sg.n;
    for (size_t p = 1; p < nb; ++p) bnd[p] = std::min(nodes[p], sg.n);
    for (size_t p = 0; p < nb; ++p) {
      double acc = 0.0;
      for (int i = bnd[p]; i < bnd[p + 1]; ++i) acc += tw[i] * v[i] * v[i];
      I[p][p] = scale0 * acc;
    }
    return I;
  }

  // staggered element boundaries: block p covers [bnd[p], bnd[p+1]-1] so
  // the blocks tile the elements exactly even when a cut falls within
  // k cells of the right edge
  const int m_elems = sg.n - 1;
  std::vector<int> bnd(nb + 1, 0);
  bnd[nb] = m_elems;
  for (size_t p = 1; p < nb; ++p) bnd[p] = std::min(nodes[p], m_elems);
  for (size_t p = 0; p < nb; ++p) {
    if (bnd[p] >= bnd[p + 1]) continue;  // empty block, zero row
    for (size_t q = 0; q < nb; ++q) {
      if (bnd[q] >= bnd[q + 1]) continue;
      I[p][q] = scale * restricted_form_value(sg, s, v, bnd[p], bnd[p + 1] - 1,
                                              bnd[q], bnd[q + 1] - 1);
    }
  }
  return I;
}

TransitionReport count_transitions(const GridFunction& u, double lambda1,
                                   double lambda2) {
  if (!(lambda1 < lambda2))
    throw std::invalid_argument("count_transitions: need lambda1 < lambda2");
  TransitionReport rep;
  rep.lambda1 = lambda1;
  rep.lambda2 = lambda2;

  // side of a threshold: values <= lambda count as the lower side, so a
  // node landing exactly on a threshold produces one crossing, not two
  const auto side = [](double v, double lambda) { return v > lambda ? 1 : -1; };

  enum State { below, inside, above };
  const double v0 = u.values[0];
  State st = side(v0, lambda2) > 0 ? above : (side(v0, lambda1) > 0 ? inside : below);
  int entry_threshold = 0;  // 0 none (started inside), 1 or 2 once entered
  int entry_seg = -1;

  for (int i = 0; i + 1 < u.grid.n; ++i) {
    const double p = u.values[i], q = u.values[i + 1];
    // gather this segment's crossings ordered by position along it
    struct Ev {
      double theta;
      int which;  // 1 or 2
      int dir;    // +1 upward
    };
    Ev ev[2];
    int ne = 0;
    for (int which = 1; which <= 2; ++which) {
      const double lam = (which == 1) ? lambda1 : lambda2;
      const int sp = side(p, lam), sq = side(q, lam);
      if (sp != sq) ev[ne++] = {(lam - p) / (q - p), which, sq};
    }
    if (ne == 2 && ev[0].theta > ev[1].theta) std::swap(ev[0], ev[1]);

    for (int e = 0; e < ne; ++e) {
      const int which = ev[e].which, dir = ev[e].dir;
      if (which == 1 && dir > 0) {  // entered the band from below
        st = inside;
        entry_threshold = 1;
        entry_seg = i;
      } else if (which == 2 && dir < 0) {  // entered from above
        st = inside;
        entry_threshold = 2;
        entry_seg = i;
      } else if (which == 2 && dir > 0) {  // left upward
        if (st == inside && entry_threshold == 1)
          rep.intervals.emplace_back(entry_seg, i + 1);
        st = above;
        entry_threshold = 0;
      } else {  // which == 1, dir < 0: left downward
        if (st == inside && entry_threshold == 2)
          rep.intervals.emplace_back(entry_seg, i + 1);
        st = below;
        entry_threshold = 0;
      }
    }
  }
  rep.count = static_cast<int>(rep.intervals.size());
  return rep;
}

std::vector<ExperimentRow> gamma_experiment(const StepFunction& u,
                                            const EnergyConfig& cfg_template,
                                            const std::vector<double>& eps_list) {
  validate_step(u);
  if (u.jump_points.empty())
    throw std::invalid_argument("gamma_experiment: need at least one jump");
  if (eps_list.empty()) return {};
  for (size_t i = 1; i < eps_list.size(); ++i)
    if (!(eps_list[i] < eps_list[i - 1]))
      throw std::invalid_argument("gamma_experiment: eps_list must decrease");

  const Grid1D& g = cfg_template.grid;
  const auto& jp = u.jump_points;
  // profile truncation chosen so the widest window still fits
  double room = std::min(jp.front() - g.a, g.b - jp.back());
  for (size_t i = 1; i < jp.size(); ++i)
    room = std::min(room, 0.5 * (jp[i] - jp[i - 1]));
  const double T = std::min(8.0, 0.9 * room / eps_list.front());

  ProfileProblem pp;
  pp.order = cfg_template.order;
  pp.well = cfg_template.well;
  pp.normalized = cfg_template.normalized;
  pp.T = T;
  pp.domain_half_width = 1.05 * T;
  pp.n = 1001;
  const ProfileResult profile = solve_profile(pp);

  const double right_value =
      (jp.size() % 2 == 0) ? u.left_value : -u.left_value;
  const std::vector<double> weights = trapezoid_weights(g);

  std::vector<ExperimentRow> rows;
  for (double eps : eps_list) {
    ExperimentRow row;
    row.eps = eps;
    try {
      EnergyConfig cfg = cfg_template;
      cfg.eps = eps;
      const EnergyModel model(cfg);
      GridFunction u0 = build_recovery(u, profile, eps, g);

      Constraints c;
      c.pad_nodes = cfg.order.k + 1;
      c.left_value = u.left_value;
      c.right_value = right_value;
      c.max_iters = 4000;
      c.grad_tol = 1e-6;
      MinimizeResult r = minimize(model, u0, c);

      row.total = r.breakdown.total;
      row.per_jump = row.total / static_cast<double>(jp.size());
      double l1 = 0.0;
      for (int i = 0; i < g.n; ++i)
        l1 += weights[i] * std::abs(r.u.values[i] - step_value(u, g.x(i)));
      row.l1_dist = l1;
      row.transitions = count_transitions(r.u, -0.5, 0.5).count;
      row.converged = r.converged;
    } catch (const std::exception&) {
      row.total = std::numeric_limits<double>::quiet_NaN();
      row.converged = false;
    }
    rows.push_back(row);
  }
  return rows;
}

namespace {

constexpr int kCheckGridN = 513;
constexpr int kTrigDegree = 12;

// random trigonometric polynomial on (0, 1) with uniform [-1, 1]
// coefficients, returned as nodal values
std::vector<double> random_trig(std::mt19937_64& rng, const Grid1D& g) {
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  std::vector<double> a(kTrigDegree + 1), b(kTrigDegree + 1);
  for (int d = 0; d <= kTrigDegree; ++d) {
    a[d] = coef(rng);
    b[d] = coef(rng);
  }
  std::vector<double> v(g.n, 0.0);
  for (int i = 0; i < g.n; ++i) {
    const double x = g.x(i);
    double acc = a[0];
    for (int d = 1; d <= kTrigDegree; ++d) {
      acc += a[d] * std::cos(2.0 * M_PI * d * x) +
             b[d] * std::sin(2.0 * M_PI * d * x);
    }
    v[i] = acc;
  }
  return v;
}

double l2_norm(const std::vector<double>& w, const std::vector<double>& v) {
  double acc = 0.0;
  for (size_t i = 0; i < v.size(); ++i) acc += w[i] * v[i] * v[i];
  return std::sqrt(std::max(0.0, acc));
}

}  // namespace

CheckReport check_interpolation(const FractionalOrder& order, int ell,
                                int samples, std::uint64_t seed) {
  validate_order(order);
  if (order.k < 1 || ell < 1 || ell > order.k)
    throw std::invalid_argument("check_interpolation: need 1 <= ell <= k");
  if (samples < 1) throw std::invalid_argument("check_interpolation: samples < 1");

  const Grid1D g = make_grid(0.0, 1.0, kCheckGridN);
  const int k = order.k;
  const double s = order.s;
  const Grid1D sg{g.a + 0.5 * k * g.h, g.b - 0.5 * k * g.h, g.n - k, g.h};
  SeminormForm form;
  if (s > 0.0) form = assemble_form(sg, s);
  const std::vector<double> w_base = trapezoid_weights(g);
  const double theta = 1.0 - static_cast<double>(ell) / (k + s);

  std::mt19937_64 rng(seed);
  CheckReport rep;
  rep.order = order;
  rep.ell = ell;
  rep.samples = samples;
  rep.seed = seed;
  for (int sample = 0; sample < samples; ++sample) {
    const GridFunction u{g, random_trig(rng, g)};
    const DerivativeSamples dl = derivative(u, ell);
    const DerivativeSamples dk = derivative(u, k);
    const double lhs = l2_norm(trapezoid_weights(dl.grid), dl.values);
    const double norm = l2_norm(w_base, u.values);
    const double semi = s > 0.0
                            ? std::sqrt(seminorm(form, dk.values))
                            : l2_norm(trapezoid_weights(dk.grid), dk.values);
    const double rhs = norm + std::pow(norm, theta) * std::pow(semi, 1.0 - theta);
    if (rhs > 0.0) rep.max_ratio = std::max(rep.max_ratio, lhs / rhs);
  }
  return rep;
}

CheckReport check_l2_bound(double s, int samples, std::uint64_t seed) {
  if (!(s > 0.0 && s < 1.0))
    throw std::invalid_argument("check_l2_bound: s must lie in (0, 1)");
  if (samples < 1) throw std::invalid_argument("check_l2_bound: samples < 1");

  const Grid1D g = make_grid(0.0, 1.0, kCheckGridN);
  const SeminormForm form = assemble_form(g, s);
  const std::vector<double> w = trapezoid_weights(g);
  // J = middle half; kCheckGridN - 1 is divisible by 4 so the endpoints
  // are nodes
  const int jlo = (g.n - 1) / 4, jhi = 3 * (g.n - 1) / 4;

  std::mt19937_64 rng(seed);
  CheckReport rep;
  rep.order = FractionalOrder{0, s};
  rep.samples = samples;
  rep.seed = seed;
  for (int sample = 0; sample < samples; ++sample) {
    const std::vector<double> v = random_trig(rng, g);
    const double lhs = l2_norm(w, v);
    double mean = 0.5 * g.h * (v[jlo] + v[jhi]);
    for (int i = jlo + 1; i < jhi; ++i) mean += g.h * v[i];
    const double rhs = std::abs(mean) + std::sqrt(seminorm(form, v));
    if (rhs > 0.0) rep.max_ratio = std::max(rep.max_ratio, lhs / rhs);
  }
  return rep;
}

}  // namespace fracwell
