// Subcommand front end.  Each subcommand owns a small parameter struct;
// values come from flags, then from an optional JSON config file for any
// flag not given on the command line (flags win).  Tables go to --out as
// CSV or JSON, or to stdout when --out is empty.  Relative output paths
// land in $FRACWELL_OUT_DIR when that is set.
//
// Exit codes: 0 success, 1 rejected input (message names the offending
// flag), 2 numerical failure after a partial-results note.

#include "fracwell/cli.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "fracwell/energy.hpp"
#include "fracwell/gagliardo.hpp"
#include "fracwell/gamma.hpp"
#include "fracwell/grid.hpp"
#include "fracwell/optimize.hpp"
#include "fracwell/potential.hpp"
#include "fracwell/profile.hpp"

namespace fracwell {
namespace {

using ordered_json = nlohmann::ordered_json;

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return std::string(buf);
}

std::string resolve_out(const std::string& path) {
  if (path.empty() || path.front() == '/') return path;
  const char* dir = std::getenv("FRACWELL_OUT_DIR");
  if (dir != nullptr && *dir != '\0') return std::string(dir) + "/" + path;
  return path;
}

// Rows hold pre-formatted tokens so CSV and JSON emit identical digits.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

// Numeric tokens pass through unquoted; non-finite values become null so
// the JSON stays parseable.
std::string json_cell(const std::string& token) {
  const char* c = token.c_str();
  char* end = nullptr;
  double v = std::strtod(c, &end);
  if (end != c && *end == '\0') {
    if (!std::isfinite(v)) return "null";
    return token;
  }
  return "\"" + token + "\"";
}

void emit_table(std::ostream& os, const Table& t, const std::string& format) {
  if (format == "csv") {
    for (std::size_t j = 0; j < t.header.size(); ++j)
      os << (j ? "," : "") << t.header[j];
    os << "\n";
    for (const auto& row : t.rows) {
      for (std::size_t j = 0; j < row.size(); ++j)
        os << (j ? "," : "") << row[j];
      os << "\n";
    }
    return;
  }
  os << "[\n";
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    os << "  {";
    for (std::size_t j = 0; j < t.header.size(); ++j) {
      os << (j ? ", " : "") << "\"" << t.header[j]
         << "\": " << json_cell(t.rows[i][j]);
    }
    os << "}" << (i + 1 < t.rows.size() ? "," : "") << "\n";
  }
  os << "]\n";
}

void write_text(const std::string& resolved, const std::string& text) {
  if (resolved.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(resolved);
  if (!out) throw std::invalid_argument("out: cannot open " + resolved);
  out << text;
  if (!out) throw std::runtime_error("out: write failed for " + resolved);
}

void write_table(const std::string& resolved, const std::string& format,
                 const Table& t) {
  std::ostringstream os;
  emit_table(os, t, format);
  write_text(resolved, os.str());
}

DoubleWell load_well(const std::string& which) {
  if (which == "quartic") return quartic_well();
  return tabulated_well(which);
}

// Fills flag variables from a JSON config file after parsing, keyed by
// the flag's long name without dashes.  Only flags absent from the
// command line are filled, so explicit flags always win.
class ConfigMerge {
 public:
  void bind(CLI::Option* opt, std::function<void(const ordered_json&)> apply) {
    items_.push_back(Item{opt, std::move(apply)});
  }

  void finalize(const std::string& config_path) const {
    if (config_path.empty()) return;
    std::ifstream in(config_path);
    if (!in) throw std::invalid_argument("config: cannot open " + config_path);
    ordered_json doc;
    try {
      in >> doc;
    } catch (const std::exception& e) {
      throw std::invalid_argument("config: " + config_path + " is not JSON (" +
                                  std::string(e.what()) + ")");
    }
    if (!doc.is_object())
      throw std::invalid_argument("config: top level must be a JSON object");
    std::set<std::string> known;
    for (const auto& item : items_) {
      const std::string key = item.opt->get_lnames().front();
      known.insert(key);
      if (item.opt->count() > 0 || !doc.contains(key)) continue;
      try {
        item.apply(doc.at(key));
      } catch (const std::exception&) {
        throw std::invalid_argument("config: bad value for key \"" + key + "\"");
      }
    }
    for (const auto& kv : doc.items()) {
      if (known.count(kv.key()) == 0)
        throw std::invalid_argument("config: unknown key \"" + kv.key() + "\"");
    }
  }

 private:
  struct Item {
    CLI::Option* opt;
    std::function<void(const ordered_json&)> apply;
  };
  std::vector<Item> items_;
};

template <typename T>
CLI::Option* bind_opt(CLI::App* cmd, ConfigMerge& merge, T& var,
                      const std::string& name, const std::string& desc) {
  CLI::Option* o = cmd->add_option(name, var, desc);
  merge.bind(o, [&var](const ordered_json& v) { var = v.get<T>(); });
  return o;
}

CLI::Option* bind_flag(CLI::App* cmd, ConfigMerge& merge, bool& var,
                       const std::string& name, const std::string& desc) {
  CLI::Option* o = cmd->add_flag(name, var, desc);
  merge.bind(o, [&var](const ordered_json& v) { var = v.get<bool>(); });
  return o;
}

CLI::Option* add_format(CLI::App* cmd, ConfigMerge& merge, std::string& var) {
  return bind_opt(cmd, merge, var, "--format", "output format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
}

void require_value(const std::string& value, const char* flag) {
  if (value.empty())
    throw std::invalid_argument(std::string(flag) + ": required");
}

// Sentinel for "flag not given" on optional numeric flags; config files
// can still supply a number.
constexpr double kUnset = std::numeric_limits<double>::quiet_NaN();

std::string bool_cell(bool b) { return b ? "1" : "0"; }

// ---------------------------------------------------------------- seminorm

struct SeminormParams {
  std::string input, out, format = "csv", config;
  int k = 0;
  double s = 0.5;
  double tail_T = kUnset;
  double tail_c_left = 0.0, tail_c_right = 0.0;
};

int run_seminorm(const SeminormParams& p) {
  require_value(p.input, "input");
  FractionalOrder order{p.k, p.s};
  validate_order(order);
  GridFunction u = read_csv(p.input);
  DerivativeSamples d = derivative(u, p.k);
  double value = 0.0;
  if (p.s == 0.0) {
    if (!std::isnan(p.tail_T))
      throw std::invalid_argument("tail-T: requires s > 0");
    std::vector<double> sq(d.values.size());
    for (std::size_t i = 0; i < sq.size(); ++i) sq[i] = d.values[i] * d.values[i];
    value = integrate(d.grid, sq);
  } else {
    SeminormForm form =
        std::isnan(p.tail_T)
            ? assemble_form(d.grid, p.s)
            : assemble_form(d.grid, p.s, p.tail_T, p.tail_c_left, p.tail_c_right);
    value = seminorm(form, d.values);
  }
  Table t;
  t.header = {"k", "s", "n", "value"};
  t.rows.push_back({std::to_string(p.k), fmt17(p.s), std::to_string(u.grid.n),
                    fmt17(value)});
  write_table(resolve_out(p.out), p.format, t);
  return 0;
}

// ------------------------------------------------------------------ energy

struct EnergyParams {
  std::string input, forcing, well = "quartic", out, format = "csv", config;
  int k = 0;
  double s = 0.5;
  double eps = 1.0;
  bool normalized = false;
  double tail_T = kUnset;
  double tail_c_left = 0.0, tail_c_right = 0.0;
};

int run_energy(const EnergyParams& p) {
  require_value(p.input, "input");
  GridFunction u = read_csv(p.input);
  EnergyConfig cfg;
  cfg.order = FractionalOrder{p.k, p.s};
  cfg.eps = p.eps;
  cfg.well = load_well(p.well);
  cfg.normalized = p.normalized;
  cfg.grid = u.grid;
  if (!std::isnan(p.tail_T)) {
    cfg.tail_T = p.tail_T;
    cfg.tail_c_left = p.tail_c_left;
    cfg.tail_c_right = p.tail_c_right;
  }
  if (!p.forcing.empty()) cfg.forcing = read_csv(p.forcing);
  EnergyBreakdown b = energy(cfg, u);
  Table t;
  t.header = {"k", "s", "eps", "well", "seminorm", "forcing", "total"};
  t.rows.push_back({std::to_string(p.k), fmt17(p.s), fmt17(p.eps),
                    fmt17(b.well_term), fmt17(b.seminorm_term),
                    fmt17(b.forcing_term), fmt17(b.total)});
  write_table(resolve_out(p.out), p.format, t);
  return 0;
}

// ---------------------------------------------------------------- minimize

struct MinimizeParams {
  int k = 0;
  double s = 0.5;
  double eps = 1.0;
  double grid_a = -1.0, grid_b = 1.0;
  int grid_n = 513;
  std::string well = "quartic";
  bool normalized = false;
  double tail_T = kUnset;
  double tail_c_left = 0.0, tail_c_right = 0.0;
  int pad_nodes = 0;
  double pad_left = -1.0, pad_right = 1.0;
  double mass = kUnset;
  int max_iters = 2000;
  double grad_tol = 1e-8;
  double init_width = 1.0;
  std::string u0, trace, out, summary_out, format = "csv", config;
};

int run_minimize(const MinimizeParams& p) {
  require_value(p.out, "out");
  EnergyConfig cfg;
  cfg.order = FractionalOrder{p.k, p.s};
  cfg.eps = p.eps;
  cfg.well = load_well(p.well);
  cfg.normalized = p.normalized;
  cfg.grid = make_grid(p.grid_a, p.grid_b, p.grid_n);
  if (!std::isnan(p.tail_T)) {
    cfg.tail_T = p.tail_T;
    cfg.tail_c_left = p.tail_c_left;
    cfg.tail_c_right = p.tail_c_right;
  }
  GridFunction start;
  if (!p.u0.empty()) {
    start = read_csv(p.u0);
    if (!same_grid(start.grid, cfg.grid))
      throw std::invalid_argument("u0: grid does not match --grid-a/b/n");
  } else {
    if (!(p.init_width > 0.0))
      throw std::invalid_argument("init-width: must be positive");
    std::vector<double> v(cfg.grid.n);
    for (int i = 0; i < cfg.grid.n; ++i)
      v[i] = std::tanh(cfg.grid.x(i) / p.init_width);
    start = make_grid_function(cfg.grid, std::move(v));
  }
  EnergyModel model(std::move(cfg));
  Constraints c;
  c.pad_nodes = p.pad_nodes;
  c.left_value = p.pad_left;
  c.right_value = p.pad_right;
  if (!std::isnan(p.mass)) c.mass = p.mass;
  c.max_iters = p.max_iters;
  c.grad_tol = p.grad_tol;
  c.trace_path = resolve_out(p.trace);
  MinimizeResult r = minimize(model, start, c);
  write_csv(resolve_out(p.out), r.u);
  Table t;
  t.header = {"iterations", "converged", "grad_inf",
              "well",       "seminorm",  "forcing",
              "total"};
  t.rows.push_back({std::to_string(r.iterations), bool_cell(r.converged),
                    fmt17(r.grad_inf_norm), fmt17(r.breakdown.well_term),
                    fmt17(r.breakdown.seminorm_term),
                    fmt17(r.breakdown.forcing_term), fmt17(r.breakdown.total)});
  write_table(resolve_out(p.summary_out), p.format, t);
  if (!r.converged) {
    std::cerr << "minimize: gradient tolerance not reached after "
              << r.iterations << " iterations; partial results written\n";
    return 2;
  }
  return 0;
}

// ----------------------------------------------------------------- profile

struct ProfileParams {
  int k = 0;
  double s = 0.5;
  double T = 20.0;
  double half_width = kUnset;
  int grid_n = 0;
  std::string well = "quartic";
  bool normalized = false;
  std::string out, profile_out, format = "csv", config;
};

// Defaults follow the library's reference problem: 5% domain margin and
// 500 elements across the matching window.
ProfileProblem build_profile_problem(int k, double s, double T,
                                     double half_width, int n,
                                     const std::string& well, bool normalized) {
  ProfileProblem p = default_profile_problem(k, s);
  p.well = load_well(well);
  p.normalized = normalized;
  p.T = T;
  p.domain_half_width =
      std::isnan(half_width) ? T + std::max(1.0, 0.05 * T) : half_width;
  if (n > 0) {
    p.n = n;
  } else {
    if (!(T > 0.0)) throw std::invalid_argument("T: must be positive");
    const double h = T / 500.0;
    p.n = 1 + static_cast<int>(std::lround(2.0 * p.domain_half_width / h));
  }
  return p;
}

int run_profile(const ProfileParams& p) {
  ProfileProblem prob = build_profile_problem(p.k, p.s, p.T, p.half_width,
                                              p.grid_n, p.well, p.normalized);
  ProfileResult r = solve_profile(prob);
  Table t;
  t.header = {"s", "T", "n", "m_hat", "well", "seminorm", "converged"};
  t.rows.push_back({fmt17(p.s), fmt17(r.T), std::to_string(r.n), fmt17(r.m_hat),
                    fmt17(r.breakdown.well_term), fmt17(r.breakdown.seminorm_term),
                    bool_cell(r.converged)});
  write_table(resolve_out(p.out), p.format, t);
  if (!p.profile_out.empty()) write_csv(resolve_out(p.profile_out), r.profile);
  if (!r.converged) {
    std::cerr << "profile: optimal-profile solve did not converge; partial "
                 "results written\n";
    return 2;
  }
  return 0;
}

// ----------------------------------------------------------------- sweep-s

struct SweepSParams {
  int k = 0;
  std::vector<double> s_list;
  bool normalized = false;
  double T = 20.0;
  int grid_n = 1051;
  std::string out, format = "csv", config;
};

int run_sweep_s(const SweepSParams& p) {
  if (p.s_list.empty())
    throw std::invalid_argument("s-list: at least one value required");
  std::vector<SweepRow> rows = sweep_s(p.k, p.s_list, p.normalized, p.T, p.grid_n);
  Table t;
  t.header = {"s", "T", "n", "m_hat", "well", "seminorm", "converged"};
  bool all_ok = true;
  for (const SweepRow& r : rows) {
    all_ok = all_ok && r.converged;
    t.rows.push_back({fmt17(r.s), fmt17(r.T), std::to_string(r.n), fmt17(r.m_hat),
                      fmt17(r.well_term), fmt17(r.seminorm_term),
                      bool_cell(r.converged)});
  }
  write_table(resolve_out(p.out), p.format, t);
  if (!all_ok) {
    std::cerr << "sweep-s: some rows did not converge; partial results "
                 "written\n";
    return 2;
  }
  return 0;
}

// ----------------------------------------------------------------- sweep-T

struct SweepTParams {
  int k = 0;
  double s = 0.5;
  std::vector<double> T_list;
  double T = 20.0;
  double half_width = kUnset;
  int grid_n = 0;
  std::string well = "quartic";
  bool normalized = false;
  std::string out, format = "csv", config;
};

int run_sweep_T(const SweepTParams& p) {
  if (p.T_list.empty())
    throw std::invalid_argument("T-list: at least one value required");
  ProfileProblem base = build_profile_problem(p.k, p.s, p.T, p.half_width,
                                              p.grid_n, p.well, p.normalized);
  std::vector<TSweepRow> rows = sweep_T(base, p.T_list);
  Table t;
  t.header = {"T", "n", "m_hat", "well", "seminorm", "converged"};
  bool all_ok = true;
  for (const TSweepRow& r : rows) {
    all_ok = all_ok && r.converged;
    t.rows.push_back({fmt17(r.T), std::to_string(r.n), fmt17(r.m_hat),
                      fmt17(r.well_term), fmt17(r.seminorm_term),
                      bool_cell(r.converged)});
  }
  write_table(resolve_out(p.out), p.format, t);
  if (!all_ok) {
    std::cerr << "sweep-T: some rows did not converge; partial results "
                 "written\n";
    return 2;
  }
  return 0;
}

// ---------------------------------------------------------------- recovery

struct RecoveryParams {
  std::vector<double> jumps{0.0};
  double left_value = -1.0;
  int k = 0;
  double s = 0.5;
  std::vector<double> eps_list{0.1, 0.05, 0.025};
  double grid_a = -1.0, grid_b = 1.0;
  int grid_n = 1025;
  std::string well = "quartic";
  bool normalized = false;
  std::string out, format = "csv", config;
};

int run_recovery(const RecoveryParams& p) {
  StepFunction target;
  target.jump_points = p.jumps;
  target.left_value = p.left_value;
  EnergyConfig cfg;
  cfg.order = FractionalOrder{p.k, p.s};
  cfg.well = load_well(p.well);
  cfg.normalized = p.normalized;
  cfg.grid = make_grid(p.grid_a, p.grid_b, p.grid_n);
  std::vector<ExperimentRow> rows = gamma_experiment(target, cfg, p.eps_list);
  Table t;
  t.header = {"eps", "total", "per_jump", "l1_dist", "transitions", "converged"};
  bool all_ok = true;
  for (const ExperimentRow& r : rows) {
    all_ok = all_ok && r.converged;
    t.rows.push_back({fmt17(r.eps), fmt17(r.total), fmt17(r.per_jump),
                      fmt17(r.l1_dist), std::to_string(r.transitions),
                      bool_cell(r.converged)});
  }
  write_table(resolve_out(p.out), p.format, t);
  if (!all_ok) {
    std::cerr << "recovery: some epsilon rows did not converge; partial "
                 "results written\n";
    return 2;
  }
  return 0;
}

// ------------------------------------------------------------- transitions

struct TransitionsParams {
  std::string input;
  double lambda1 = -0.5, lambda2 = 0.5;
  std::string out, format = "csv", config;
};

int run_transitions(const TransitionsParams& p) {
  require_value(p.input, "input");
  if (!(p.lambda1 < p.lambda2))
    throw std::invalid_argument("lambda2: must exceed lambda1");
  GridFunction u = read_csv(p.input);
  TransitionReport r = count_transitions(u, p.lambda1, p.lambda2);
  if (p.format == "json") {
    ordered_json doc;
    doc["lambda1"] = r.lambda1;
    doc["lambda2"] = r.lambda2;
    doc["count"] = r.count;
    ordered_json iv = ordered_json::array();
    for (const auto& pr : r.intervals) iv.push_back({pr.first, pr.second});
    doc["intervals"] = iv;
    write_text(resolve_out(p.out), doc.dump(2) + "\n");
    return 0;
  }
  Table t;
  t.header = {"start_index", "end_index"};
  for (const auto& pr : r.intervals)
    t.rows.push_back({std::to_string(pr.first), std::to_string(pr.second)});
  write_table(resolve_out(p.out), p.format, t);
  return 0;
}

// ---------------------------------------------------------------- checks

struct CheckParams {
  int k = 1;
  double s = 0.5;
  int ell = 1;
  int samples = 200;
  std::uint64_t seed = 20250815ull;
  std::string out, format = "json", config;
};

int emit_check(const CheckParams& p, const CheckReport& rep) {
  if (p.format == "csv") {
    Table t;
    t.header = {"k", "s", "ell", "samples", "seed", "max_ratio"};
    t.rows.push_back({std::to_string(rep.order.k), fmt17(rep.order.s),
                      std::to_string(rep.ell), std::to_string(rep.samples),
                      std::to_string(rep.seed), fmt17(rep.max_ratio)});
    write_table(resolve_out(p.out), p.format, t);
    return 0;
  }
  ordered_json doc;
  doc["order"] = {{"k", rep.order.k}, {"s", rep.order.s}};
  doc["ell"] = rep.ell;
  doc["samples"] = rep.samples;
  doc["seed"] = rep.seed;
  doc["max_ratio"] = rep.max_ratio;
  write_text(resolve_out(p.out), doc.dump(2) + "\n");
  return 0;
}

int run_check_interp(const CheckParams& p) {
  CheckReport rep =
      check_interpolation(FractionalOrder{p.k, p.s}, p.ell, p.samples, p.seed);
  return emit_check(p, rep);
}

int run_check_l2(const CheckParams& p) {
  CheckReport rep = check_l2_bound(p.s, p.samples, p.seed);
  return emit_check(p, rep);
}

// ------------------------------------------------------------------ wiring

void add_config_flag(CLI::App* cmd, ConfigMerge&, std::string& var) {
  cmd->add_option("--config", var,
                  "JSON file supplying values for flags not given here");
}

void add_tail_flags(CLI::App* cmd, ConfigMerge& m, double& T, double& cl,
                    double& cr) {
  bind_opt(cmd, m, T, "--tail-T",
           "extend by constants outside [-T, T] (default: no tail)");
  bind_opt(cmd, m, cl, "--tail-c-left", "left tail constant");
  bind_opt(cmd, m, cr, "--tail-c-right", "right tail constant");
}

}  // namespace

int run_cli(int argc, char** argv) {
  CLI::App app{
      "fracwell: double-well energies with fractional interfacial terms "
      "on uniform 1-D grids"};
  app.require_subcommand(1);
  int rc = 0;

  // seminorm
  {
    auto p = std::make_shared<SeminormParams>();
    auto m = std::make_shared<ConfigMerge>();
    CLI::App* c = app.add_subcommand(
        "seminorm", "evaluate the squared order-(k+s) seminorm of a sampled function");
    bind_opt(c, *m, p->input, "--input", "CSV of samples (header x,value)");
    bind_opt(c, *m, p->k, "--k", "integer derivative order");
    bind_opt(c, *m, p->s, "--s", "fractional order in [0,1)");
    add_tail_flags(c, *m, p->tail_T, p->tail_c_left, p->tail_c_right);
    bind_opt(c, *m, p->out, "--out", "output file (empty: stdout)");
    add_format(c, *m, p->format);
    add_config_flag(c, *m, p->config);
    c->callback([p, m, &rc] {
      m->finalize(p->config);
      rc = run_seminorm(*p);
    });
  }

  // energy
  {
    auto p = std::make_shared<EnergyParams>();
    auto m = std::make_shared<ConfigMerge>();
    CLI::App* c = app.add_subcommand(
        "energy", "evaluate the scaled well + seminorm energy of a sampled function");
    bind_opt(c, *m, p->input, "--input", "CSV of samples (header x,value)");
    bind_opt(c, *m, p->k, "--k", "integer derivative order");
    bind_opt(c, *m, p->s, "--s", "fractional order in [0,1)");
    bind_opt(c, *m, p->eps, "--eps", "interface width parameter");
    bind_opt(c, *m, p->well, "--well", "quartic, or CSV table z,W,dW");
    bind_flag(c, *m, p->normalized, "--normalized",
              "apply the s(1-s)/2^{1-s} seminorm factor");
    bind_opt(c, *m, p->forcing, "--forcing", "CSV of a forcing term on the same grid");
    add_tail_flags(c, *m, p->tail_T, p->tail_c_left, p->tail_c_right);
    bind_opt(c, *m, p->out, "--out", "output file (empty: stdout)");
    add_format(c, *m, p->format);
    add_config_flag(c, *m, p->config);
    c->callback([p, m, &rc] {
      m->finalize(p->config);
      rc = run_energy(*p);
    });
  }

  // minimize
  {
    auto p = std::make_shared<MinimizeParams>();
    auto m = std::make_shared<ConfigMerge>();
    CLI::App* c = app.add_subcommand(
        "minimize", "gradient descent on the energy under pad and mass constraints");
    bind_opt(c, *m, p->k, "--k", "integer derivative order");
    bind_opt(c, *m, p->s, "--s", "fractional order in [0,1)");
    bind_opt(c, *m, p->eps, "--eps", "interface width parameter");
    bind_opt(c, *m, p->grid_a, "--grid-a", "left endpoint");
    bind_opt(c, *m, p->grid_b, "--grid-b", "right endpoint");
    bind_opt(c, *m, p->grid_n, "--grid-n", "node count");
    bind_opt(c, *m, p->well, "--well", "quartic, or CSV table z,W,dW");
    bind_flag(c, *m, p->normalized, "--normalized",
              "apply the s(1-s)/2^{1-s} seminorm factor");
    add_tail_flags(c, *m, p->tail_T, p->tail_c_left, p->tail_c_right);
    bind_opt(c, *m, p->pad_nodes, "--pad-nodes", "clamped nodes at each end");
    bind_opt(c, *m, p->pad_left, "--pad-left", "value clamped on the left pad");
    bind_opt(c, *m, p->pad_right, "--pad-right", "value clamped on the right pad");
    bind_opt(c, *m, p->mass, "--mass", "constrain the trapezoid integral of u");
    bind_opt(c, *m, p->max_iters, "--max-iters", "iteration cap");
    bind_opt(c, *m, p->grad_tol, "--grad-tol", "sup-norm tolerance on the reduced gradient");
    bind_opt(c, *m, p->u0, "--u0", "CSV with the starting point (default: tanh ramp)");
    bind_opt(c, *m, p->init_width, "--init-width", "width of the default tanh start");
    bind_opt(c, *m, p->trace, "--trace", "CSV path for per-iteration progress");
    bind_opt(c, *m, p->out, "--out", "CSV path for the minimizer (required)");
    bind_opt(c, *m, p->summary_out, "--summary-out", "summary table (empty: stdout)");
    add_format(c, *m, p->format);
    add_config_flag(c, *m, p->config);
    c->callback([p, m, &rc] {
      m->finalize(p->config);
      rc = run_minimize(*p);
    });
  }

  // profile
  {
    auto p = std::make_shared<ProfileParams>();
    auto m = std::make_shared<ConfigMerge>();
    CLI::App* c = app.add_subcommand(
        "profile", "solve the eps = 1 optimal-profile problem and report its energy");
    bind_opt(c, *m, p->k, "--k", "integer derivative order");
    bind_opt(c, *m, p->s, "--s", "fractional order in [0,1)");
    bind_opt(c, *m, p->T, "--T", "half-width of the matching window");
    bind_opt(c, *m, p->half_width, "--half-width",
             "computational half-width (default: T plus a 5% margin)");
    bind_opt(c, *m, p->grid_n, "--grid-n", "node count (default: 500 elements per T)");
    bind_opt(c, *m, p->well, "--well", "quartic, or CSV table z,W,dW");
    bind_flag(c, *m, p->normalized, "--normalized",
              "apply the s(1-s)/2^{1-s} seminorm factor");
    bind_opt(c, *m, p->out, "--out", "summary row (empty: stdout)");
    bind_opt(c, *m, p->profile_out, "--profile-out", "CSV path for the profile");
    add_format(c, *m, p->format);
    add_config_flag(c, *m, p->config);
    c->callback([p, m, &rc] {
      m->finalize(p->config);
      rc = run_profile(*p);
    });
  }

  // sweep-s
  {
    auto p = std::make_shared<SweepSParams>();
    auto m = std::make_shared<ConfigMerge>();
    CLI::App* c = app.add_subcommand(
        "sweep-s", "profile energies across fractional orders");
    bind_opt(c, *m, p->k, "--k", "integer derivative order");
    bind_opt(c, *m, p->s_list, "--s-list", "comma-separated fractional orders")
        ->delimiter(',');
    bind_flag(c, *m, p->normalized, "--normalized",
              "apply the s(1-s)/2^{1-s} seminorm factor");
    bind_opt(c, *m, p->T, "--T", "half-width of the matching window");
    bind_opt(c, *m, p->grid_n, "--grid-n", "node count per solve");
    bind_opt(c, *m, p->out, "--out", "output file (empty: stdout)");
    add_format(c, *m, p->format);
    add_config_flag(c, *m, p->config);
    c->callback([p, m, &rc] {
      m->finalize(p->config);
      rc = run_sweep_s(*p);
    });
  }

  // sweep-T
  {
    auto p = std::make_shared<SweepTParams>();
    auto m = std::make_shared<ConfigMerge>();
    CLI::App* c = app.add_subcommand(
        "sweep-T", "profile energies across matching windows at fixed spacing");
    bind_opt(c, *m, p->k, "--k", "integer derivative order");
    bind_opt(c, *m, p->s, "--s", "fractional order in [0,1)");
    bind_opt(c, *m, p->T_list, "--T-list", "comma-separated window half-widths")
        ->delimiter(',');
    bind_opt(c, *m, p->T, "--T", "window of the base problem fixing the spacing");
    bind_opt(c, *m, p->half_width, "--half-width",
             "computational half-width of the base problem");
    bind_opt(c, *m, p->grid_n, "--grid-n", "node count of the base problem");
    bind_opt(c, *m, p->well, "--well", "quartic, or CSV table z,W,dW");
    bind_flag(c, *m, p->normalized, "--normalized",
              "apply the s(1-s)/2^{1-s} seminorm factor");
    bind_opt(c, *m, p->out, "--out", "output file (empty: stdout)");
    add_format(c, *m, p->format);
    add_config_flag(c, *m, p->config);
    c->callback([p, m, &rc] {
      m->finalize(p->config);
      rc = run_sweep_T(*p);
    });
  }

  // recovery
  {
    auto p = std::make_shared<RecoveryParams>();
    auto m = std::make_shared<ConfigMerge>();
    CLI::App* c = app.add_subcommand(
        "recovery", "minimize from profile-based starts toward a step target "
        "across shrinking eps");
    bind_opt(c, *m, p->jumps, "--jumps", "comma-separated jump locations")
        ->delimiter(',');
    bind_opt(c, *m, p->left_value, "--left-value", "step value before the first jump (+1 or -1)");
    bind_opt(c, *m, p->k, "--k", "integer derivative order");
    bind_opt(c, *m, p->s, "--s", "fractional order in [0,1)");
    bind_opt(c, *m, p->eps_list, "--eps-list",
             "comma-separated, strictly decreasing eps values")
        ->delimiter(',');
    bind_opt(c, *m, p->grid_a, "--grid-a", "left endpoint");
    bind_opt(c, *m, p->grid_b, "--grid-b", "right endpoint");
    bind_opt(c, *m, p->grid_n, "--grid-n", "node count");
    bind_opt(c, *m, p->well, "--well", "quartic, or CSV table z,W,dW");
    bind_flag(c, *m, p->normalized, "--normalized",
              "apply the s(1-s)/2^{1-s} seminorm factor");
    bind_opt(c, *m, p->out, "--out", "output file (empty: stdout)");
    add_format(c, *m, p->format);
    add_config_flag(c, *m, p->config);
    c->callback([p, m, &rc] {
      m->finalize(p->config);
      rc = run_recovery(*p);
    });
  }

  // transitions
  {
    auto p = std::make_shared<TransitionsParams>();
    auto m = std::make_shared<ConfigMerge>();
    CLI::App* c = app.add_subcommand(
        "transitions", "count threshold crossings of a sampled function");
    bind_opt(c, *m, p->input, "--input", "CSV of samples (header x,value)");
    bind_opt(c, *m, p->lambda1, "--lambda1", "lower threshold");
    bind_opt(c, *m, p->lambda2, "--lambda2", "upper threshold");
    bind_opt(c, *m, p->out, "--out", "output file (empty: stdout)");
    add_format(c, *m, p->format);
    add_config_flag(c, *m, p->config);
    c->callback([p, m, &rc] {
      m->finalize(p->config);
      rc = run_transitions(*p);
    });
  }

  // check-interp
  {
    auto p = std::make_shared<CheckParams>();
    auto m = std::make_shared<ConfigMerge>();
    CLI::App* c = app.add_subcommand(
        "check-interp", "sample the intermediate-derivative bound on random "
        "trigonometric polynomials");
    bind_opt(c, *m, p->k, "--k", "integer derivative order");
    bind_opt(c, *m, p->s, "--s", "fractional order in [0,1)");
    bind_opt(c, *m, p->ell, "--ell", "intermediate order, 1 <= ell <= k");
    bind_opt(c, *m, p->samples, "--samples", "number of random samples");
    bind_opt(c, *m, p->seed, "--seed", "RNG seed");
    bind_opt(c, *m, p->out, "--out", "output file (empty: stdout)");
    add_format(c, *m, p->format);
    add_config_flag(c, *m, p->config);
    c->callback([p, m, &rc] {
      m->finalize(p->config);
      rc = run_check_interp(*p);
    });
  }

  // check-l2
  {
    auto p = std::make_shared<CheckParams>();
    auto m = std::make_shared<ConfigMerge>();
    CLI::App* c = app.add_subcommand(
        "check-l2", "sample the mean-plus-seminorm L2 bound on random "
        "trigonometric polynomials");
    bind_opt(c, *m, p->s, "--s", "fractional order in (0,1)");
    bind_opt(c, *m, p->samples, "--samples", "number of random samples");
    bind_opt(c, *m, p->seed, "--seed", "RNG seed");
    bind_opt(c, *m, p->out, "--out", "output file (empty: stdout)");
    add_format(c, *m, p->format);
    add_config_flag(c, *m, p->config);
    c->callback([p, m, &rc] {
      m->finalize(p->config);
      rc = run_check_l2(*p);
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what()
              << "\nnote: partial results may already have been written\n";
    return 2;
  }
  return rc;
}

}  // namespace fracwell
