// Drives the installed binary through std::system and inspects exit
// codes and captured streams.  FRACWELL_BIN is injected by the build.
#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "fracwell/grid.hpp"

using namespace fracwell;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

struct RunResult {
  int code = -1;
  std::string out;
  std::string err;
};

// env holds shell-style VAR=value assignments; the default clears the
// output-dir override so relative paths stay in the working directory
RunResult run(const std::string& args,
              const std::string& env = "FRACWELL_OUT_DIR=") {
  static int counter = 0;
  const std::string so = "cli_stdout_" + std::to_string(counter) + ".txt";
  const std::string se = "cli_stderr_" + std::to_string(counter) + ".txt";
  ++counter;
  const std::string cmd =
      env + " " + FRACWELL_BIN + " " + args + " >" + so + " 2>" + se;
  const int raw = std::system(cmd.c_str());
  RunResult r;
  r.code = (raw == -1) ? 127 : WEXITSTATUS(raw);
  r.out = slurp(so);
  r.err = slurp(se);
  std::remove(so.c_str());
  std::remove(se.c_str());
  return r;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string tok;
  std::istringstream is(line);
  while (std::getline(is, tok, ',')) out.push_back(tok);
  return out;
}

std::string line_at(const std::string& text, int idx) {
  std::istringstream is(text);
  std::string line;
  for (int i = 0; i <= idx; ++i)
    if (!std::getline(is, line)) return "";
  return line;
}

void write_zero_samples(const std::string& path) {
  Grid1D g = make_grid(0.0, 1.0, 21);
  write_csv(path, make_grid_function(g, std::vector<double>(21, 0.0)));
}

}  // namespace

TEST_CASE("cli requires a subcommand and offers help") {
  CHECK(run("").code == 1);
  RunResult help = run("--help");
  CHECK(help.code == 0);
  CHECK(help.out.find("seminorm") != std::string::npos);
  CHECK(help.out.find("profile") != std::string::npos);
}

TEST_CASE("cli rejects malformed invocations") {
  write_zero_samples("cli_zero.csv");
  CHECK(run("seminorm --input cli_zero.csv --s abc").code == 1);
  CHECK(run("seminorm --input cli_zero.csv --bogus 3").code == 1);
  CHECK(run("seminorm --input cli_zero.csv --format xml").code == 1);
  CHECK(run("seminorm --k 1 --s 0.75").code == 1);  // no input anywhere

  RunResult sub = run("seminorm --input cli_zero.csv --k 0 --s 0.3");
  CHECK(sub.code == 1);
  CHECK(sub.err.find("k + s") != std::string::npos);

  RunResult tail = run("seminorm --input cli_zero.csv --k 1 --s 0 --tail-T 2");
  CHECK(tail.code == 1);
  CHECK(tail.err.find("tail-T") != std::string::npos);
  std::remove("cli_zero.csv");
}

TEST_CASE("seminorm of the zero function prints a zero row") {
  write_zero_samples("cli_zero.csv");
  RunResult r = run("seminorm --input cli_zero.csv --k 0 --s 0.75");
  CHECK(r.code == 0);
  CHECK(line_at(r.out, 0) == "k,s,n,value");
  CHECK(line_at(r.out, 1) == "0,0.75,21,0");

  RunResult j =
      run("seminorm --input cli_zero.csv --k 0 --s 0.75 --format json");
  CHECK(j.code == 0);
  CHECK(j.out.find("\"value\": 0") != std::string::npos);
  std::remove("cli_zero.csv");
}

TEST_CASE("energy of a pure phase is zero term by term") {
  Grid1D g = make_grid(-1.0, 1.0, 41);
  write_csv("cli_one.csv", make_grid_function(g, std::vector<double>(41, 1.0)));
  RunResult r = run("energy --input cli_one.csv --k 1 --s 0 --eps 0.5");
  CHECK(r.code == 0);
  std::vector<std::string> row = split(line_at(r.out, 1));
  REQUIRE(row.size() == 7);
  CHECK(row[0] == "1");   // k
  CHECK(row[3] == "0");   // well
  CHECK(row[4] == "0");   // seminorm
  CHECK(row[6] == "0");   // total
  std::remove("cli_one.csv");
}

TEST_CASE("minimize writes the minimizer and a summary") {
  RunResult r = run(
      "minimize --k 1 --s 0 --eps 0.3 --grid-a -1 --grid-b 1 --grid-n 41 "
      "--pad-nodes 2 --out cli_min.csv --summary-out cli_min_sum.csv");
  CHECK(r.code == 0);
  GridFunction u = read_csv("cli_min.csv");
  CHECK(u.grid.n == 41);
  CHECK(u.values.front() == -1.0);
  CHECK(u.values.back() == 1.0);
  const std::string sum = slurp("cli_min_sum.csv");
  CHECK(line_at(sum, 0) ==
        "iterations,converged,grad_inf,well,seminorm,forcing,total");
  std::vector<std::string> row = split(line_at(sum, 1));
  REQUIRE(row.size() == 7);
  CHECK(row[1] == "1");  // converged
  std::remove("cli_min.csv");
  std::remove("cli_min_sum.csv");
}

TEST_CASE("minimize without an output path fails early") {
  RunResult r = run("minimize --k 1 --s 0 --eps 0.3 --grid-n 41");
  CHECK(r.code == 1);
  CHECK(r.err.find("out") != std::string::npos);
}

TEST_CASE("starved iteration budget still writes partial results") {
  RunResult r = run(
      "minimize --k 1 --s 0 --eps 0.3 --grid-a -1 --grid-b 1 --grid-n 41 "
      "--pad-nodes 2 --max-iters 1 --out cli_part.csv "
      "--summary-out cli_part_sum.csv");
  CHECK(r.code == 2);
  CHECK(r.err.find("minimize") != std::string::npos);
  CHECK(read_csv("cli_part.csv").grid.n == 41);
  std::vector<std::string> row = split(line_at(slurp("cli_part_sum.csv"), 1));
  REQUIRE(row.size() == 7);
  CHECK(row[1] == "0");  // not converged
  std::remove("cli_part.csv");
  std::remove("cli_part_sum.csv");
}

TEST_CASE("repeated runs are byte-identical") {
  const std::string flags =
      "minimize --k 1 --s 0 --eps 0.4 --grid-a -1 --grid-b 1 --grid-n 31 "
      "--pad-nodes 2 ";
  CHECK(run(flags + "--out cli_det_a.csv --summary-out cli_det_sa.csv").code == 0);
  CHECK(run(flags + "--out cli_det_b.csv --summary-out cli_det_sb.csv").code == 0);
  CHECK(slurp("cli_det_a.csv") == slurp("cli_det_b.csv"));
  CHECK(slurp("cli_det_sa.csv") == slurp("cli_det_sb.csv"));
  for (const char* f : {"cli_det_a.csv", "cli_det_b.csv", "cli_det_sa.csv",
                        "cli_det_sb.csv"})
    std::remove(f);

  RunResult c1 = run("check-interp --k 1 --s 0.5 --ell 1 --samples 40");
  RunResult c2 = run("check-interp --k 1 --s 0.5 --ell 1 --samples 40");
  CHECK(c1.code == 0);
  CHECK(c1.out == c2.out);
  RunResult c3 = run("check-interp --k 1 --s 0.5 --ell 1 --samples 40 --seed 7");
  CHECK(c3.out != c1.out);
}

TEST_CASE("config files fill gaps and flags override them") {
  write_zero_samples("cli_zero.csv");
  {
    std::ofstream cfg("cli_cfg.json");
    cfg << "{\"input\": \"cli_zero.csv\", \"s\": 0.75}\n";
  }
  RunResult base = run("seminorm --config cli_cfg.json");
  CHECK(base.code == 0);
  CHECK(line_at(base.out, 1) == "0,0.75,21,0");

  RunResult over = run("seminorm --config cli_cfg.json --k 1 --s 0.25");
  CHECK(over.code == 0);
  CHECK(line_at(over.out, 1) == "1,0.25,21,0");

  {
    std::ofstream cfg("cli_bad.json");
    cfg << "{\"inpt\": \"cli_zero.csv\"}\n";
  }
  RunResult bad = run("seminorm --config cli_bad.json");
  CHECK(bad.code == 1);
  CHECK(bad.err.find("unknown key") != std::string::npos);

  RunResult missing = run("seminorm --config cli_nope.json");
  CHECK(missing.code == 1);
  std::remove("cli_cfg.json");
  std::remove("cli_bad.json");
  std::remove("cli_zero.csv");
}

TEST_CASE("transition counting through the front end") {
  Grid1D g = make_grid(-0.5, 0.5, 1201);
  std::vector<double> v(g.n);
  for (int i = 0; i < g.n; ++i) v[i] = std::sin(6.0 * M_PI * g.x(i));
  write_csv("cli_sin.csv", make_grid_function(g, v));

  RunResult csv = run("transitions --input cli_sin.csv");
  CHECK(csv.code == 0);
  CHECK(line_at(csv.out, 0) == "start_index,end_index");
  int rows = 0;
  std::istringstream is(csv.out);
  std::string line;
  std::getline(is, line);
  while (std::getline(is, line))
    if (!line.empty()) ++rows;
  CHECK(rows == 5);

  RunResult js = run("transitions --input cli_sin.csv --format json");
  CHECK(js.code == 0);
  CHECK(js.out.find("\"count\": 5") != std::string::npos);

  CHECK(run("transitions --input cli_sin.csv --lambda1 0.5 --lambda2 -0.5")
            .code == 1);
  std::remove("cli_sin.csv");
}

TEST_CASE("inequality checks emit their reports") {
  RunResult j = run("check-l2 --s 0.5 --samples 40");
  CHECK(j.code == 0);
  CHECK(j.out.find("\"max_ratio\":") != std::string::npos);
  CHECK(j.out.find("\"seed\": 20250815") != std::string::npos);

  RunResult c = run("check-interp --k 2 --s 0.25 --ell 2 --samples 30 "
                    "--format csv");
  CHECK(c.code == 0);
  CHECK(line_at(c.out, 0) == "k,s,ell,samples,seed,max_ratio");
  std::vector<std::string> row = split(line_at(c.out, 1));
  REQUIRE(row.size() == 6);
  CHECK(row[0] == "2");
  CHECK(row[2] == "2");

  CHECK(run("check-interp --k 1 --s 0.5 --ell 3 --samples 10").code == 1);
}

TEST_CASE("relative outputs land in the configured directory") {
  CHECK(std::system("mkdir -p cli_outdir") == 0);
  RunResult r = run("check-l2 --s 0.5 --samples 20 --out rep.json",
                    "FRACWELL_OUT_DIR=cli_outdir");
  CHECK(r.code == 0);
  const std::string rep = slurp("cli_outdir/rep.json");
  CHECK(rep.find("\"max_ratio\":") != std::string::npos);
  std::remove("cli_outdir/rep.json");
  CHECK(std::system("rmdir cli_outdir") == 0);
}

TEST_CASE("profile subcommand reproduces the classical constant") {
  RunResult r = run(
      "profile --k 1 --s 0 --well quartic --T 10 --grid-n 2001 "
      "--out cli_prof.csv --profile-out cli_prof_u.csv");
  CHECK(r.code == 0);
  const std::string out = slurp("cli_prof.csv");
  CHECK(line_at(out, 0) == "s,T,n,m_hat,well,seminorm,converged");
  std::vector<std::string> row = split(line_at(out, 1));
  REQUIRE(row.size() == 7);
  const double m_hat = std::strtod(row[3].c_str(), nullptr);
  CHECK(std::abs(m_hat - 8.0 / 3.0) <= 0.01 * (8.0 / 3.0));
  CHECK(row[6] == "1");
  CHECK(read_csv("cli_prof_u.csv").grid.n == 2001);
  std::remove("cli_prof.csv");
  std::remove("cli_prof_u.csv");

  RunResult bad = run("profile --k 0 --s 0.4");
  CHECK(bad.code == 1);
  CHECK(bad.err.find("k + s") != std::string::npos);
}
