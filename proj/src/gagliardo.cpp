#include "fracwell/gagliardo.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <limits>
#include <stdexcept>

#include "fracwell/kernels.hpp"
#include "fracwell/quadrature.hpp"

namespace fracwell {

namespace {

constexpr double kExpBranchTol = 1e-9;
const double kInf = std::numeric_limits<double>::infinity();

// antiderivative of t^e, with the log branch when e is within 1e-9 of -1
inline double prim(double e, double t) {
  if (std::abs(e + 1.0) < kExpBranchTol) return std::log(t);
  if (t == 0.0) return 0.0;  // e+1 > 0 in every non-pinned use
  return std::pow(t, e + 1.0) / (e + 1.0);
}

// iint_{E x E} |x-y|^{1-2s} dx dy over one element of width h
inline double same_element_integral(double h, double s) {
  return std::pow(h, 3.0 - 2.0 * s) / ((1.0 - s) * (3.0 - 2.0 * s));
}

// adjacent-pair moments, one ordered copy over [0,h]^2:
//   M20 = iint u^2 (u+w)^{-1-2s},  M11 = iint u w (u+w)^{-1-2s}
// Collapsed antiderivative combinations; expm1 keeps the near-branch
// cancellations benign and |1-2s| < 1e-9 switches to the log-limit form.
inline double adjacent_m20(double h, double s) {
  const double ln2 = M_LN2;
  const double x1 = 3.0 - 2.0 * s, x2 = 2.0 - 2.0 * s, x3 = 1.0 - 2.0 * s;
  const double e2 = std::expm1(x2 * ln2);
  const double a1 = -2.0 * e2 / x1;
  const double a2 = 2.0 * e2 / x2;
  const double a3 = std::abs(x3) < kExpBranchTol ? ln2 : std::expm1(x3 * ln2) / x3;
  return std::pow(h, x1) / (2.0 * s) * (a1 + a2 - a3);
}

inline double adjacent_m11(double h, double s) {
  const double ln2 = M_LN2;
  const double x = 2.0 * s - 1.0;
  if (std::abs(x) < kExpBranchTol)
    return h * h * (2.0 * ln2 - 1.0) / 2.0;
  const double num = x - 2.0 * std::expm1(x * ln2);
  const double den = std::pow(4.0, s) * s * x * (x - 2.0);
  return std::pow(h, 3.0 - 2.0 * s) * num / den;
}

// 4x4 block for a separated element pair at gap g (>= 2), both orderings.
// Node order: (e, e+1, f, f+1).  Depends only on (h, s, g).
struct PairBlock {
  double m[4][4];
};

PairBlock separated_block(double h, double s, int g) {
  PairBlock B{};
  const double scale = 2.0 * (h / 2.0) * (h / 2.0);  // 2 copies x jacobians
  for (int a = 0; a < 4; ++a) {
    const double ta = 0.5 * (quad::gl4_x[a] + 1.0);
    for (int b = 0; b < 4; ++b) {
      const double tb = 0.5 * (quad::gl4_x[b] + 1.0);
      const double d = h * (g + tb - ta);
      const double K = scale * quad::gl4_w[a] * quad::gl4_w[b] *
                       std::pow(d, -1.0 - 2.0 * s);
      const double vec[4] = {1.0 - ta, ta, -(1.0 - tb), -tb};
      // vec[i]*vec[j] first so mirror entries round identically and the
      // scattered matrix stays symmetric to the last bit
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) B.m[i][j] += K * (vec[i] * vec[j]);
    }
  }
  return B;
}

void check_form_inputs(const Grid1D& grid, double s) {
  if (grid.n < 2) throw std::invalid_argument("assemble_form: degenerate grid");
  if (grid.n > 4096)
    throw std::invalid_argument("assemble_form: dense assembly limited to n <= 4096");
  if (!(s > 0.0 && s < 1.0))
    throw std::invalid_argument("assemble_form: s must lie in (0, 1)");
}

}  // namespace

SeminormForm assemble_form(const Grid1D& grid, double s) {
  check_form_inputs(grid, s);
  SeminormForm form;
  form.grid = grid;
  form.s = s;
  const int n = grid.n;
  const int M = n - 1;
  const double h = grid.h;
  form.matrix.assign(static_cast<size_t>(n) * n, 0.0);
  double* A = form.matrix.data();
  auto at = [&](int i, int j) -> double& { return A[static_cast<size_t>(i) * n + j]; };

  // same element: S * slope^2 as a 2x2 difference block
  const double cs = same_element_integral(h, s) / (h * h);
  for (int e = 0; e < M; ++e) {
    at(e, e) += cs;
    at(e, e + 1) -= cs;
    at(e + 1, e) -= cs;
    at(e + 1, e + 1) += cs;
  }

  // adjacent pair: 2[M20(p^2+q^2) + 2 M11 p q] on nodes (e, e+1, e+2)
  const double m20 = adjacent_m20(h, s) / (h * h);
  const double m11 = adjacent_m11(h, s) / (h * h);
  const double B3[3][3] = {
      {2 * m20, 2 * (m11 - m20), -2 * m11},
      {2 * (m11 - m20), 4 * (m20 - m11), 2 * (m11 - m20)},
      {-2 * m11, 2 * (m11 - m20), 2 * m20}};
  for (int e = 0; e + 1 < M; ++e)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) at(e + i, e + j) += B3[i][j];

  // separated pairs: one block per gap, scattered along the diagonal
  for (int g = 2; g < M; ++g) {
    const PairBlock B = separated_block(h, s, g);
    for (int e = 0; e + g < M; ++e) {
      const int idx[4] = {e, e + 1, e + g, e + g + 1};
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) at(idx[i], idx[j]) += B.m[i][j];
    }
  }
  return form;
}

SeminormForm assemble_form(const Grid1D& grid, double s, double tail_T,
                           double c_left, double c_right) {
  // slack covers endpoint recomputation noise (a + (n-1)h vs stored b);
  // the element loop snaps such sub-ulp overlaps to touching geometry
  const double edge = std::max(std::abs(grid.a), std::abs(grid.b));
  if (!(tail_T >= edge - 1e-9 * grid.h))
    throw std::invalid_argument("assemble_form: tail_T lies inside the domain");
  SeminormForm form = assemble_form(grid, s);
  form.has_tail = true;
  form.tail_T = tail_T;
  form.c_left = c_left;
  form.c_right = c_right;
  const int n = grid.n;
  const double h = grid.h;
  form.tl_diag.assign(n, 0.0);
  form.tl_off.assign(n - 1, 0.0);
  form.tr_diag.assign(n, 0.0);
  form.tr_off.assign(n - 1, 0.0);

  // per-element basis integrals against the tail kernels; tau is the
  // distance to the truncation point, snapped to 0 when the element
  // touches it.  All entries carry the ordering factor 2 and the 1/(2s)
  // from integrating the kernel across the tail.
  const double snap = 1e-9 * h;
  const double x1 = -2.0 * s, x2 = 1.0 - 2.0 * s, x3 = 2.0 - 2.0 * s;
  const double fac = 1.0 / s;  // 2 / (2s)

  // One element against one tail: t_near/t_far are the distances of its
  // endpoints to the truncation point, i_near/i_far the matching local node
  // slots (0 = left node of the element).  When the element touches the
  // point the t_near^2 coefficients vanish, so the divergent antiderivative
  // is never evaluated; the near entry itself diverges for s >= 1/2 and is
  // replaced by a pin on that boundary node.
  auto element_tail = [&](double t_near, double t_far, double out[3]) -> bool {
    if (t_near < snap) t_near = 0.0;
    const bool touching = (t_near == 0.0);
    const bool pinned = touching && s >= 0.5 - kExpBranchTol;
    const double P1 = prim(x2, t_far) - prim(x2, t_near);
    const double P2 = prim(x3, t_far) - prim(x3, t_near);
    double near2, cross, far2;
    if (touching) {
      far2 = P2;
      cross = -P2 + t_far * P1;
      near2 = pinned ? 0.0
                     : P2 - 2.0 * t_far * P1 + t_far * t_far * prim(x1, t_far);
    } else {
      const double P0 = prim(x1, t_far) - prim(x1, t_near);
      near2 = P2 - 2.0 * t_far * P1 + t_far * t_far * P0;
      cross = -P2 + (t_far + t_near) * P1 - t_far * t_near * P0;
      far2 = P2 - 2.0 * t_near * P1 + t_near * t_near * P0;
    }
    const double c = fac / (h * h);
    out[0] = c * near2;
    out[1] = c * cross;
    out[2] = c * far2;
    return pinned;
  };

  double I[3];
  for (int e = 0; e + 1 < n; ++e) {
    const double xl = grid.a + e * h, xr = grid.a + (e + 1) * h;
    // right tail: the near endpoint is xr, paired with node e+1
    if (element_tail(form.tail_T - xr, form.tail_T - xl, I))
      form.pinned_right = n - 1;
    form.tr_diag[e + 1] += I[0];
    form.tr_off[e] += I[1];
    form.tr_diag[e] += I[2];
    // left tail: the near endpoint is xl, paired with node e
    if (element_tail(xl + form.tail_T, xr + form.tail_T, I))
      form.pinned_left = 0;
    form.tl_diag[e] += I[0];
    form.tl_off[e] += I[1];
    form.tl_diag[e + 1] += I[2];
  }

  // far-far interaction of the two constant extensions
  if (c_left == c_right) {
    form.tail_const = 0.0;
  } else if (s > 0.5) {
    const double dc = c_right - c_left;
    form.tail_const = dc * dc * std::pow(2.0 * tail_T, 1.0 - 2.0 * s) /
                      (s * (2.0 * s - 1.0));
  } else {
    form.tail_const = kInf;  // the whole-line energy of unequal constants diverges
  }
  return form;
}

namespace {

bool all_equal(const std::vector<double>& v) {
  for (size_t i = 1; i < v.size(); ++i)
    if (v[i] != v[0]) return false;
  return true;
}

}  // namespace

double seminorm(const SeminormForm& form, const std::vector<double>& v) {
  const size_t n = form.grid.n;
  if (v.size() != n) throw std::invalid_argument("seminorm: size mismatch");
  // constants span the kernel of the form; skipping the quadrature keeps
  // that exact instead of leaving matvec rounding noise
  double Q = 0.0;
  if (!all_equal(v)) {
    Q = kern::quadform(form.matrix.data(), n, v.data());
    if (Q < 0.0) {
      const double nrm2 = kern::dot(v.data(), v.data(), n);
      if (Q >= -1e-12 * std::max(1.0, nrm2)) Q = 0.0;
    }
  }
  if (!form.has_tail) return Q;

  if (form.pinned_left >= 0 && std::abs(v[form.pinned_left] - form.c_left) > 1e-12)
    return kInf;
  if (form.pinned_right >= 0 && std::abs(v[form.pinned_right] - form.c_right) > 1e-12)
    return kInf;

  double tail = form.tail_const;
  for (size_t i = 0; i < n; ++i) {
    const double dl = v[i] - form.c_left;
    const double dr = v[i] - form.c_right;
    tail += form.tl_diag[i] * dl * dl + form.tr_diag[i] * dr * dr;
  }
  for (size_t i = 0; i + 1 < n; ++i) {
    tail += 2.0 * form.tl_off[i] * (v[i] - form.c_left) * (v[i + 1] - form.c_left);
    tail += 2.0 * form.tr_off[i] * (v[i] - form.c_right) * (v[i + 1] - form.c_right);
  }
  return Q + tail;
}

std::vector<double> seminorm_gradient(const SeminormForm& form,
                                      const std::vector<double>& v) {
  const size_t n = form.grid.n;
  if (v.size() != n) throw std::invalid_argument("seminorm_gradient: size mismatch");
  std::vector<double> g(n);
  if (!all_equal(v)) {
    kern::matvec(form.matrix.data(), n, v.data(), g.data());
    for (size_t i = 0; i < n; ++i) g[i] *= 2.0;
  }
  if (!form.has_tail) return g;
  for (size_t i = 0; i < n; ++i) {
    double acc = form.tl_diag[i] * (v[i] - form.c_left) +
                 form.tr_diag[i] * (v[i] - form.c_right);
    if (i > 0)
      acc += form.tl_off[i - 1] * (v[i - 1] - form.c_left) +
             form.tr_off[i - 1] * (v[i - 1] - form.c_right);
    if (i + 1 < n)
      acc += form.tl_off[i] * (v[i + 1] - form.c_left) +
             form.tr_off[i] * (v[i + 1] - form.c_right);
    g[i] += 2.0 * acc;
  }
  return g;
}

double restricted_form_value(const Grid1D& grid, double s,
                             const std::vector<double>& v, int e1_lo, int e1_hi,
                             int e2_lo, int e2_hi) {
  check_form_inputs(grid, s);
  const int M = grid.n - 1;
  if (v.size() != static_cast<size_t>(grid.n))
    throw std::invalid_argument("restricted_form_value: size mismatch");
  if (e1_lo < 0 || e2_lo < 0 || e1_hi >= M || e2_hi >= M || e1_lo > e1_hi ||
      e2_lo > e2_hi)
    throw std::invalid_argument("restricted_form_value: bad element range");

  const double h = grid.h;
  const double S = same_element_integral(h, s);
  const double m20 = adjacent_m20(h, s), m11 = adjacent_m11(h, s);
  const int max_gap = std::max(e1_hi, e2_hi) - std::min(e1_lo, e2_lo);
  std::vector<PairBlock> cache(std::max(0, max_gap + 1));
  std::vector<char> cached(cache.size(), 0);

  double total = 0.0;
  for (int e = e1_lo; e <= e1_hi; ++e) {
    const double pe = (v[e + 1] - v[e]) / h;
    for (int f = e2_lo; f <= e2_hi; ++f) {
      if (e == f) {
        total += S * pe * pe;
        continue;
      }
      const int lo = std::min(e, f), g = std::abs(e - f);
      if (g == 1) {
        const double p = (v[lo + 1] - v[lo]) / h;
        const double q = (v[lo + 2] - v[lo + 1]) / h;
        total += m20 * (p * p + q * q) + 2.0 * m11 * p * q;
        continue;
      }
      if (!cached[g]) {
        cache[g] = separated_block(h, s, g);
        cached[g] = 1;
      }
      const double loc[4] = {v[lo], v[lo + 1], v[lo + g], v[lo + g + 1]};
      const PairBlock& B = cache[g];
      double acc = 0.0;
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) acc += B.m[i][j] * loc[i] * loc[j];
      total += 0.5 * acc;  // one ordered copy
    }
  }
  return total;
}

namespace {

// int_1^inf cos(t) t^{-mu} dt by two rounds of integration by parts and a
// rapidly decaying numerical remainder
double cos_tail_integral(double mu) {
  const double c1 = std::cos(1.0), s1 = std::sin(1.0);
  auto C4 = quad::adaptive(
      [mu](double t) { return std::cos(t) * std::pow(t, -mu - 4.0); }, 1.0, 200.0,
      1e-12);
  const double C2 = -s1 + (mu + 2.0) * c1 - (mu + 2.0) * (mu + 3.0) * C4;
  return -s1 + mu * c1 - mu * (mu + 1.0) * C2;
}

}  // namespace

namespace {

// 1 - cos t - t^2/2 without the cancellation that otherwise wrecks the
// weighted head integral near t = 0 (direct evaluation loses all digits
// once t^4/24 drops below rounding noise in 1 - cos t)
inline double cos_remainder(double t) {
  if (t < 0.5) {
    const double q = t * t;
    return -(q * q) / 24.0 *
           (1.0 - q / 30.0 * (1.0 - q / 56.0 * (1.0 - q / 90.0 * (1.0 - q / 132.0))));
  }
  return 1.0 - std::cos(t) - 0.5 * t * t;
}

}  // namespace

double a_constant(double s) {
  if (!(s > 0.0 && s < 1.0))
    throw std::invalid_argument("a_constant: s must lie in (0, 1)");
  // 2 int_R (1-cos t)|t|^{-1-2s} dt = 4 int_0^inf; split the head at 1
  // with the t^2/2 part integrated exactly
  const double head_sing = 0.25 / (1.0 - s);
  const double head_reg = quad::adaptive(
      [s](double t) { return cos_remainder(t) * std::pow(t, -1.0 - 2.0 * s); },
      0.0, 1.0, 1e-10);
  const double tail = 1.0 / (2.0 * s) - cos_tail_integral(1.0 + 2.0 * s);
  return 4.0 * (head_sing + head_reg + tail);
}

double a_constant_gamma(double s) {
  if (!(s > 0.0 && s < 1.0))
    throw std::invalid_argument("a_constant_gamma: s must lie in (0, 1)");
  if (std::abs(s - 0.5) < kExpBranchTol) return 2.0 * M_PI;
  return 4.0 * (-std::tgamma(-2.0 * s)) * std::cos(M_PI * s);
}

double fourier_oracle(double s, const std::function<double(double)>& f_hat,
                      double xi_max) {
  if (!(s > 0.0 && s < 1.0))
    throw std::invalid_argument("fourier_oracle: s must lie in (0, 1)");
  if (!(xi_max > 1.0))
    throw std::invalid_argument("fourier_oracle: xi_max must exceed 1");
  auto density = [&](double xi) {
    const double fp = f_hat(xi), fm = f_hat(-xi);
    return std::pow(xi, 2.0 * s) * (fp * fp + fm * fm);
  };
  const double I = quad::adaptive(density, 0.0, 1.0, 1e-9) +
                   quad::adaptive(density, 1.0, xi_max, 1e-9);
  const double edge = density(xi_max) * xi_max;
  if (!(edge <= 1e-10 * std::max(I, 1e-300)))
    throw std::invalid_argument("fourier_oracle: f_hat does not decay by xi_max");
  return a_constant(s) * I;
}

void save_matrix_cache(const std::string& path, const SeminormForm& form) {
  std::FILE* f = std::fopen(path.c_str(), "wb");
  if (!f) throw std::runtime_error("save_matrix_cache: cannot open " + path);
  const int64_t n = form.grid.n;
  const double s = form.s, h = form.grid.h, a = form.grid.a;
  bool ok = std::fwrite(&n, 8, 1, f) == 1 && std::fwrite(&s, 8, 1, f) == 1 &&
            std::fwrite(&h, 8, 1, f) == 1 && std::fwrite(&a, 8, 1, f) == 1 &&
            std::fwrite(form.matrix.data(), sizeof(double), form.matrix.size(), f) ==
                form.matrix.size();
  std::fclose(f);
  if (!ok) throw std::runtime_error("save_matrix_cache: short write to " + path);
}

bool load_matrix_cache(const std::string& path, const Grid1D& grid, double s,
                       SeminormForm* out) {
  std::FILE* f = std::fopen(path.c_str(), "rb");
  if (!f) return false;
  int64_t n = 0;
  double fs = 0, fh = 0, fa = 0;
  if (std::fread(&n, 8, 1, f) != 1 || std::fread(&fs, 8, 1, f) != 1 ||
      std::fread(&fh, 8, 1, f) != 1 || std::fread(&fa, 8, 1, f) != 1 ||
      n != grid.n || fs != s || fh != grid.h || fa != grid.a) {
    std::fclose(f);
    return false;
  }
  std::vector<double> m(static_cast<size_t>(n) * n);
  const bool ok = std::fread(m.data(), sizeof(double), m.size(), f) == m.size();
  std::fclose(f);
  if (!ok) return false;
  out->grid = grid;
  out->s = s;
  out->matrix = std::move(m);
  out->has_tail = false;
  out->tl_diag.clear();
  out->tl_off.clear();
  out->tr_diag.clear();
  out->tr_off.clear();
  out->tail_const = 0.0;
  out->pinned_left = out->pinned_right = -1;
  return true;
}

}  // namespace fracwell
