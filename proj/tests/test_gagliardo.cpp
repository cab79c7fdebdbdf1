// The assembled bilinear form is checked against values computed with an
// independent high-precision route (closed-form antiderivatives and the
// Fourier-side identity), frozen here as literals.

#include "fracwell/gagliardo.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "fracwell/grid.hpp"

using namespace fracwell;

namespace {

std::vector<double> sampled(const Grid1D& g, double (*f)(double)) {
  std::vector<double> v(g.n);
  for (int i = 0; i < g.n; ++i) v[i] = f(g.x(i));
  return v;
}

double gaussian(double x) { return std::exp(-x * x); }

double ramp_value(double s) { return 1.0 / ((1.0 - s) * (3.0 - 2.0 * s)); }

}  // namespace

TEST_CASE("single-element ramp hits the closed form exactly") {
  // one element, v = x: the double integral is h^{3-2s}/((1-s)(3-2s))
  for (double s : {0.25, 0.5, 0.75}) {
    Grid1D g = make_grid(0.0, 1.0, 2);
    SeminormForm form = assemble_form(g, s);
    const double got = seminorm(form, {0.0, 1.0});
    CHECK(got == doctest::Approx(ramp_value(s)).epsilon(1e-12));
  }
}

TEST_CASE("matrix entries reproduce the frozen element integrals") {
  // n = 2, h = 1: diagonal = same-element integral S(1, s)
  {
    Grid1D g = make_grid(0.0, 1.0, 2);
    SeminormForm f = assemble_form(g, 0.3);
    CHECK(f.matrix[0] == doctest::Approx(0.59523809523809524).epsilon(1e-14));
    CHECK(f.matrix[1] == doctest::Approx(-0.59523809523809524).epsilon(1e-14));
  }
  // n = 3, h = 1: corner = -2*M11, diagonal = S + 2*M20
  {
    Grid1D g = make_grid(0.0, 2.0, 3);
    SeminormForm f = assemble_form(g, 0.3);
    const double S = 0.59523809523809524;
    const double M20 = (f.matrix[0] - S) / 2.0;
    const double M11 = -f.matrix[2] / 2.0;
    CHECK(M20 == doctest::Approx(0.29472479791630221).epsilon(1e-13));
    CHECK(M11 == doctest::Approx(0.19307752992470628).epsilon(1e-13));
  }
  {
    Grid1D g = make_grid(0.0, 2.0, 3);
    SeminormForm f = assemble_form(g, 0.75);
    const double S = 8.0 / 3.0;
    CHECK(f.matrix[0] - S == doctest::Approx(2 * 0.3458553746897879).epsilon(1e-13));
    CHECK(-f.matrix[2] == doctest::Approx(2 * 0.2064293751410055).epsilon(1e-13));
  }
}

TEST_CASE("refined ramp still sums to the closed form") {
  // splitting (0,1) into 40 elements exercises same, adjacent and
  // separated pairs; the quadrature on separated pairs carries ~1e-9
  for (double s : {0.3, 0.5, 0.75}) {
    Grid1D g = make_grid(0.0, 1.0, 41);
    SeminormForm form = assemble_form(g, s);
    std::vector<double> v = sampled(g, [](double x) { return x; });
    CHECK(seminorm(form, v) == doctest::Approx(ramp_value(s)).epsilon(5e-8));
  }
}

TEST_CASE("matrix is bitwise symmetric with zero row sums") {
  Grid1D g = make_grid(-1.0, 2.0, 33);
  SeminormForm form = assemble_form(g, 0.6);
  const int n = g.n;
  double max_diag = 0.0;
  for (int i = 0; i < n; ++i)
    max_diag = std::max(max_diag, std::abs(form.matrix[i * n + i]));
  for (int i = 0; i < n; ++i) {
    double row = 0.0;
    for (int j = 0; j < n; ++j) {
      row += form.matrix[i * n + j];
      // symmetry must be exact, not approximate: both orders of each
      // pair accumulate the identical product
      CHECK(form.matrix[i * n + j] == form.matrix[j * n + i]);
    }
    // constants lie in the kernel, so rows sum to rounding noise
    CHECK(std::abs(row) <= 1e-12 * max_diag);
  }
}

TEST_CASE("seminorm of a constant is zero and never negative") {
  Grid1D g = make_grid(0.0, 1.0, 65);
  SeminormForm form = assemble_form(g, 0.45);
  CHECK(seminorm(form, std::vector<double>(65, 3.7)) == 0.0);

  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> v(65);
    for (double& x : v) x = dist(rng);
    CHECK(seminorm(form, v) >= 0.0);
  }
}

TEST_CASE("dilation scales the seminorm by lambda^(1-2s)") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> v(129);
  for (double& x : v) x = dist(rng);
  for (double s : {0.25, 0.5, 0.75}) {
    Grid1D g = make_grid(-1.0, 1.0, 129);
    const double base = seminorm(assemble_form(g, s), v);
    for (double lambda : {2.0, 4.0}) {
      Grid1D gl = make_grid(-lambda, lambda, 129);
      const double scaled = seminorm(assemble_form(gl, s), v);
      CHECK(scaled == doctest::Approx(std::pow(lambda, 1.0 - 2.0 * s) * base)
                          .epsilon(1e-12));
    }
  }
}

TEST_CASE("seminorm is translation invariant") {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> v(33);
  for (double& x : v) x = dist(rng);
  const double at0 = seminorm(assemble_form(make_grid(0.0, 1.0, 33), 0.6), v);
  const double at5 = seminorm(assemble_form(make_grid(5.0, 6.0, 33), 0.6), v);
  // assembly depends only on spacing and gaps, so this is exact
  CHECK(at0 == at5);
}

TEST_CASE("restricted element blocks tile the full form") {
  Grid1D g = make_grid(0.0, 1.0, 21);
  SeminormForm form = assemble_form(g, 0.4);
  std::vector<double> v(21);
  for (int i = 0; i < 21; ++i) v[i] = std::sin(3.0 * g.x(i)) + 0.2 * i;
  const double whole = seminorm(form, v);
  const int last = 19, cut = 7;
  const double t11 = restricted_form_value(g, 0.4, v, 0, cut, 0, cut);
  const double t22 = restricted_form_value(g, 0.4, v, cut + 1, last, cut + 1, last);
  const double t12 = restricted_form_value(g, 0.4, v, 0, cut, cut + 1, last);
  const double t21 = restricted_form_value(g, 0.4, v, cut + 1, last, 0, cut);
  CHECK(t11 + t22 + t12 + t21 == doctest::Approx(whole).epsilon(1e-11));
  CHECK(t12 == doctest::Approx(t21).epsilon(1e-13));
}

TEST_CASE("two separated blocks of a step match the frozen values") {
  // v = -1 on [0, 0.4], +1 on [0.6, 1]; one ordered copy of the cross
  // integral, frozen from exact antiderivatives
  Grid1D g = make_grid(0.0, 1.0, 51);
  std::vector<double> v(51);
  for (int i = 0; i < 51; ++i) v[i] = g.x(i) < 0.5 ? -1.0 : 1.0;
  const double got75 = restricted_form_value(g, 0.75, v, 0, 19, 30, 49);
  CHECK(got75 == doctest::Approx(3.488421760150285).epsilon(5e-9));
  const double got60 = restricted_form_value(g, 0.6, v, 0, 19, 30, 49);
  CHECK(got60 == doctest::Approx(2.7432829160772486).epsilon(5e-9));
}

TEST_CASE("spectral constant matches the frozen values on both routes") {
  CHECK(a_constant(0.01) == doctest::Approx(202.28960417587201).epsilon(1e-9));
  CHECK(a_constant(0.25) == doctest::Approx(10.026513098524002).epsilon(1e-9));
  CHECK(a_constant(0.5) == doctest::Approx(2.0 * M_PI).epsilon(1e-9));
  CHECK(a_constant(0.75) == doctest::Approx(6.684342065682668).epsilon(1e-9));
  CHECK(a_constant(0.99) == doctest::Approx(101.87139438692087).epsilon(1e-9));
  CHECK(a_constant_gamma(0.5) == 2.0 * M_PI);
  for (double s : {0.1, 0.25, 0.49, 0.51, 0.75, 0.9})
    CHECK(a_constant_gamma(s) == doctest::Approx(a_constant(s)).epsilon(1e-8));
  CHECK_THROWS_AS(a_constant(0.0), std::invalid_argument);
  CHECK_THROWS_AS(a_constant(1.0), std::invalid_argument);
}

TEST_CASE("fourier oracle reproduces the Gaussian spectral values") {
  // v(x) = exp(-x^2); its unitary transform is exp(-xi^2/4)/sqrt(2)
  auto fhat = [](double xi) { return std::exp(-0.25 * xi * xi) / std::sqrt(2.0); };
  CHECK(fourier_oracle(0.25, fhat, 12.0) ==
        doctest::Approx(10.331805505880344).epsilon(2e-8));
  CHECK(fourier_oracle(0.5, fhat, 12.0) ==
        doctest::Approx(2.0 * M_PI).epsilon(2e-8));
  CHECK(fourier_oracle(0.75, fhat, 12.0) ==
        doctest::Approx(7.2050541492591186).epsilon(2e-8));
  CHECK_THROWS_AS(fourier_oracle(0.5, fhat, 0.5), std::invalid_argument);
  // a spectrum that has not decayed by xi_max is rejected
  auto flat = [](double) { return 1.0; };
  CHECK_THROWS_AS(fourier_oracle(0.5, flat, 12.0), std::invalid_argument);
}

TEST_CASE("discrete Gaussian seminorm approaches the whole-line value") {
  auto fhat = [](double xi) { return std::exp(-0.25 * xi * xi) / std::sqrt(2.0); };
  for (double s : {0.25, 0.75}) {
    Grid1D g = make_grid(-10.0, 10.0, 1001);
    SeminormForm form = assemble_form(g, s, 10.0, 0.0, 0.0);
    const double J = fourier_oracle(s, fhat, 12.0);
    CHECK(seminorm(form, sampled(g, gaussian)) ==
          doctest::Approx(J).epsilon(2e-3));
  }
}

TEST_CASE("tail weights carry the frozen element-tail integrals") {
  // element [0.5, 0.75] against the right tail beyond T = 1; the stored
  // tridiagonals carry a 1/s factor
  {
    Grid1D g = make_grid(0.5, 0.75, 2);
    SeminormForm f = assemble_form(g, 0.3, 1.0, 0.0, 0.0);
    CHECK(f.tr_diag[0] * 0.3 ==
          doctest::Approx(0.13774719012806198).epsilon(1e-13));
    CHECK(f.tr_off[0] * 0.3 ==
          doctest::Approx(0.075885323345863157).epsilon(1e-13));
    CHECK(f.tr_diag[1] * 0.3 ==
          doctest::Approx(0.16925492757191555).epsilon(1e-13));
    CHECK(f.pinned_right == -1);
  }
  // element touching T with s >= 1/2: the touching node is pinned to the
  // tail constant and its divergent self-weight is dropped
  {
    Grid1D g = make_grid(0.75, 1.0, 2);
    SeminormForm f = assemble_form(g, 0.75, 1.0, 0.0, 0.0);
    CHECK(f.tr_diag[0] * 0.75 == doctest::Approx(4.0 / 3.0).epsilon(1e-13));
    CHECK(f.tr_off[0] * 0.75 == doctest::Approx(8.0 / 3.0).epsilon(1e-13));
    CHECK(f.pinned_right == 1);
    CHECK(f.tr_diag[1] == 0.0);
    CHECK(seminorm(f, {0.3, 0.0}) < 1e30);
    CHECK(std::isinf(seminorm(f, {0.3, 0.5})));
  }
  // same geometry below s = 1/2 stays integrable: no pin
  {
    Grid1D g = make_grid(0.75, 1.0, 2);
    SeminormForm f = assemble_form(g, 0.3, 1.0, 0.0, 0.0);
    CHECK(f.pinned_right == -1);
    CHECK(std::isfinite(seminorm(f, {0.3, 0.5})));
  }
}

TEST_CASE("mismatched far constants diverge below s = 1/2") {
  Grid1D g = make_grid(-1.0, 1.0, 17);
  std::vector<double> v = sampled(g, [](double x) { return std::tanh(2.0 * x); });
  // the far-field cross integral of distinct constants only converges
  // for s > 1/2
  SeminormForm low = assemble_form(g, 0.4, 2.0, -1.0, 1.0);
  CHECK(std::isinf(seminorm(low, v)));
  SeminormForm high = assemble_form(g, 0.75, 2.0, -1.0, 1.0);
  CHECK(std::isfinite(seminorm(high, v)));
  SeminormForm zero = assemble_form(g, 0.4, 2.0, 0.0, 0.0);
  CHECK(std::isfinite(seminorm(zero, v)));
}

TEST_CASE("tail penalty shrinks as the truncation widens") {
  Grid1D g = make_grid(-1.0, 1.0, 41);
  std::vector<double> v = sampled(g, [](double x) { return std::tanh(2.0 * x); });
  const double bare = seminorm(assemble_form(g, 0.6), v);
  const double t1 = seminorm(assemble_form(g, 0.6, 1.0, -1.0, 1.0), v);
  const double t2 = seminorm(assemble_form(g, 0.6, 2.0, -1.0, 1.0), v);
  const double t4 = seminorm(assemble_form(g, 0.6, 4.0, -1.0, 1.0), v);
  CHECK(t1 > t2);
  CHECK(t2 > t4);
  CHECK(t4 > bare);
}

TEST_CASE("seminorm gradient matches finite differences") {
  Grid1D g = make_grid(-1.0, 1.0, 21);
  SeminormForm form = assemble_form(g, 0.65, 1.0, -1.0, 1.0);
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> dist(-0.9, 0.9);
  std::vector<double> v(21);
  for (double& x : v) x = dist(rng);
  // T sits on the domain edge at s > 1/2, pinning the endpoint nodes to
  // the extension constants; differentiate at free nodes only
  v.front() = -1.0;
  v.back() = 1.0;
  std::vector<double> grad = seminorm_gradient(form, v);
  REQUIRE(grad.size() == v.size());
  const double delta = 1e-6;
  for (int i : {1, 4, 7, 10, 13, 19}) {
    std::vector<double> vp = v, vm = v;
    vp[i] += delta;
    vm[i] -= delta;
    const double fd = (seminorm(form, vp) - seminorm(form, vm)) / (2.0 * delta);
    CHECK(grad[i] == doctest::Approx(fd).epsilon(1e-6));
  }
}

TEST_CASE("seminorm converges under grid refinement") {
  double prev_val = 0.0, prev_diff = 0.0;
  bool have_prev = false, have_diff = false;
  for (int n : {17, 33, 65, 129}) {
    Grid1D g = make_grid(0.0, 1.0, n);
    std::vector<double> v = sampled(g, [](double x) { return std::sin(M_PI * x); });
    const double val = seminorm(assemble_form(g, 0.6), v);
    if (have_prev) {
      const double diff = std::abs(val - prev_val);
      if (have_diff) CHECK(diff < prev_diff);
      prev_diff = diff;
      have_diff = true;
    }
    prev_val = val;
    have_prev = true;
  }
  CHECK(prev_diff <= 1e-3 * std::abs(prev_val));
}

TEST_CASE("assemble_form input validation") {
  Grid1D g = make_grid(0.0, 1.0, 9);
  CHECK_THROWS_AS(assemble_form(g, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(assemble_form(g, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(assemble_form(g, -0.5), std::invalid_argument);
  // the tail must start at or beyond the farthest endpoint
  CHECK_THROWS_AS(assemble_form(g, 0.5, 0.5, 0.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(assemble_form(make_grid(0.0, 1.0, 4097), 0.5),
                  std::invalid_argument);
}

TEST_CASE("matrix cache round trip and mismatch rejection") {
  const std::string path = "gagliardo_cache_test.bin";
  Grid1D g = make_grid(-0.5, 1.0, 33);
  SeminormForm form = assemble_form(g, 0.45);
  save_matrix_cache(path, form);

  SeminormForm fresh;
  REQUIRE(load_matrix_cache(path, g, 0.45, &fresh));
  REQUIRE(fresh.matrix.size() == form.matrix.size());
  CHECK(std::memcmp(fresh.matrix.data(), form.matrix.data(),
                    form.matrix.size() * sizeof(double)) == 0);

  // wrong order: rejected, target untouched
  SeminormForm other;
  other.matrix.assign(4, 7.0);
  CHECK_FALSE(load_matrix_cache(path, g, 0.55, &other));
  CHECK(other.matrix == std::vector<double>(4, 7.0));

  // wrong grid: rejected
  SeminormForm re;
  CHECK_FALSE(load_matrix_cache(path, make_grid(-0.5, 1.0, 17), 0.45, &re));

  // truncated file: rejected
  std::FILE* t = std::fopen("gagliardo_cache_trunc.bin", "wb");
  std::fputs("short", t);
  std::fclose(t);
  SeminormForm tf;
  CHECK_FALSE(load_matrix_cache("gagliardo_cache_trunc.bin", g, 0.45, &tf));
  std::remove("gagliardo_cache_trunc.bin");
  std::remove(path.c_str());
}
