#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <span>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "hypc/error.hpp"
#include "hypc/gamma.hpp"
#include "hypc/kernel.hpp"
#include "hypc/lambda.hpp"
#include "hypc/quadrature.hpp"
#include "hypc/residue.hpp"
#include "hypc/series.hpp"

namespace hypc {

struct IdentityCheck {
  std::string name;
  std::string sampler;
  double residual = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::string witness;
};

inline IdentityCheck make_check(std::string name, std::string sampler, double residual, double tolerance,
                                std::string witness) {
  const bool ok = std::isfinite(residual) && residual <= tolerance;
  return {std::move(name), std::move(sampler), residual, tolerance, ok, std::move(witness)};
}

struct VerificationReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<IdentityCheck> checks;
  bool passed = true;
};

namespace detail {

inline std::string format_cplx(cplx z) {
  std::ostringstream os;
  os.precision(17);
  os << z.real() << (z.imag() < 0 || std::signbit(z.imag()) ? "-" : "+") << std::abs(z.imag()) << "i";
  return os.str();
}

inline std::string describe(const GParams& g, cplx z) {
  return "a=" + format_lambda_list(g.a_list()) + " b=" + format_lambda_list(g.b_list()) + " z=" + format_cplx(z);
}

inline double rel_diff(cplx x, cplx y, double scale = 0.0) {
  const double s = std::max({std::abs(x), std::abs(y), scale, std::numeric_limits<double>::min()});
  return std::abs(x - y) / s;
}

inline double dist_to_integer(cplx x) { return std::abs(x - std::round(x.real())); }

}  // namespace detail

// ---- gamma_c identities ----

inline IdentityCheck check_gamma_transposition(LambdaPoint x, double tol) {
  const cplx lhs = gamma_c_value(x);
  const cplx rhs = neg_one_power(x) * gamma_c_value(x.transposed());
  return make_check("gamma_transposition", "lattice", detail::rel_diff(lhs, rhs), tol, format_lambda(x));
}

inline IdentityCheck check_gamma_reflection(LambdaPoint x, double tol) {
  const cplx lhs = gamma_c_value(x) * gamma_c_value(kOne - x);
  return make_check("gamma_reflection", "lattice", detail::rel_diff(lhs, neg_one_power(x)), tol, format_lambda(x));
}

inline IdentityCheck check_gamma_shift_up(LambdaPoint x, int m, int m_prime, double tol) {
  const cplx lhs = gamma_c_value(x + integer_point(m, m_prime));
  const cplx rhs = neg_one_power(m_prime) * gamma_c_value(x) * pochhammer(x.a(), m) * pochhammer(x.a_prime(), m_prime);
  return make_check("gamma_shift_up", "lattice", detail::rel_diff(lhs, rhs), tol,
                    format_lambda(x) + " m=" + std::to_string(m) + " m'=" + std::to_string(m_prime));
}

inline IdentityCheck check_gamma_shift_down(LambdaPoint x, int m, int m_prime, double tol) {
  const cplx lhs = gamma_c_value(x - integer_point(m, m_prime));
  const cplx rhs = neg_one_power(m) * gamma_c_value(x) /
                   (pochhammer(1.0 - x.a(), m) * pochhammer(1.0 - x.a_prime(), m_prime));
  return make_check("gamma_shift_down", "lattice", detail::rel_diff(lhs, rhs), tol,
                    format_lambda(x) + " m=" + std::to_string(m) + " m'=" + std::to_string(m_prime));
}

inline IdentityCheck check_gamma_multiplication(LambdaPoint x, int order, double tol) {
  cplx lhs = 1.0;
  for (int j = 0; j < order; ++j) lhs *= gamma_c_value(add_scalar(x, double(j) / order));
  const cplx rhs = gamma_c_value(order * x) * std::exp((1.0 - double(order) * x.sigma) * std::log(double(order)));
  return make_check("gamma_multiplication", "lattice", detail::rel_diff(lhs, rhs), tol,
                    format_lambda(x) + " order=" + std::to_string(order));
}

// eps * gamma_c(-m + eps | -m' + eps) tends to the residue.
inline IdentityCheck check_gamma_residue(int m, int m_prime, double eps = 1e-6, double tol = 1e-4) {
  const LambdaPoint near = add_scalar(integer_point(-m, -m_prime), eps);
  const cplx lhs = eps * gamma_c_value(near);
  return make_check("gamma_residue", "pole", detail::rel_diff(lhs, gamma_c_residue(m, m_prime)), tol,
                    "m=" + std::to_string(m) + " m'=" + std::to_string(m_prime));
}

// gamma_c(m | -k) = (m-1)!/k! for the implemented Gamma(a)/Gamma(1-a').
inline IdentityCheck check_gamma_integer_value(int m, int k, double tol) {
  const cplx got = gamma_c_value(integer_point(m, -k));
  const double want = std::tgamma(double(m)) / std::tgamma(double(k + 1));
  return make_check("gamma_integer_value", "integers", detail::rel_diff(got, want), tol,
                    "m=" + std::to_string(m) + " k=" + std::to_string(k));
}

// gamma_c(k | l) = 0 for positive integers k, l.
inline IdentityCheck check_gamma_integer_zero(int k, int l) {
  const GammaValue v = gamma_c(integer_point(k, l));
  const double r = v.is_pole ? 1.0 : std::abs(v.value);
  return make_check("gamma_integer_zero", "integers", r, 0.0, "k=" + std::to_string(k) + " l=" + std::to_string(l));
}

// The point a+xi | a'-conj(xi) as a lattice shift of `base`; 2 Re xi must be an integer.
inline LambdaPoint asymptotic_shift(cplx xi) {
  return {int(std::lround(2.0 * xi.real())), cplx(0.0, 2.0 * xi.imag())};
}

inline IdentityCheck check_gamma_asymptotic_ratio(LambdaPoint base, cplx xi) {
  const LambdaPoint shift = asymptotic_shift(xi);
  const cplx ratio = gamma_c_value(base + shift) / gamma_c_asymptotic(base, shift);
  return make_check("gamma_asymptotic_ratio", "stirling", std::abs(ratio - 1.0), 2.0 / std::abs(xi),
                    format_lambda(base) + " xi=" + detail::format_cplx(xi));
}

// Least-squares slope of log|gamma_c(base + i y)| against log y on [1e2, 1e4].
inline double gamma_modulus_slope(LambdaPoint base) {
  constexpr int n = 25;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < n; ++i) {
    const double y = std::pow(10.0, 2.0 + 2.0 * i / (n - 1));
    const double x = std::log(y);
    const double v = log_gamma_c(base + asymptotic_shift(cplx(0.0, y))).log.real();
    sx += x; sy += v; sxx += x * x; sxy += x * v;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

inline IdentityCheck check_gamma_asymptotic_slope(LambdaPoint base) {
  const double want = base.sigma.real() - 1.0;
  const double got = gamma_modulus_slope(base);
  return make_check("gamma_asymptotic_slope", "stirling", std::abs(got - want) / std::max(std::abs(want), 1e-300), 0.02,
                    format_lambda(base) + " slope=" + std::to_string(got));
}

// ---- closed forms ----

inline cplx closed_form_01(LambdaPoint a, cplx z) {
  return 2.0 * double_power(z, a) * std::exp(-z + std::conj(z));
}

inline cplx closed_form_11(LambdaPoint a, LambdaPoint b, cplx z) {
  return 2.0 * gamma_c_value(a + b) * double_power(z, a) * double_power(1.0 + z, -(a + b));
}

inline IdentityCheck check_closed_form_01(LambdaPoint a, cplx z, double tol) {
  const GParams g({a}, {});
  return make_check("closed_form_01", "closed", detail::rel_diff(g_eval_series(g, z).value, closed_form_01(a, z)), tol,
                    detail::describe(g, z));
}

inline IdentityCheck check_closed_form_11(LambdaPoint a, LambdaPoint b, cplx z, double tol) {
  const GParams g({a}, {b});
  return make_check("closed_form_11", "closed", detail::rel_diff(g_eval_series(g, z).value, closed_form_11(a, b, z), 0.0),
                    tol, detail::describe(g, z));
}

// ---- engines ----

inline IdentityCheck check_cross_engine(const GParams& g, cplx z, double tol, const QuadConfig& cfg = {}) {
  const cplx s = g_eval_series(g, z).value;
  const cplx q = g_eval_quad(g, z, cfg).value;
  return make_check("cross_engine", "theorem", std::abs(q - s) / (1.0 + std::abs(s)), tol, detail::describe(g, z));
}

// ---- parameter identities ----

inline IdentityCheck check_inversion(const GParams& g, cplx z, double tol) {
  const cplx lhs = g_eval(g, z).value;
  const cplx rhs = g_eval(g.swapped(), 1.0 / z).value;
  return make_check("inversion", "identities", detail::rel_diff(lhs, rhs), tol, detail::describe(g, z));
}

inline LambdaList transposed(const LambdaList& list) {
  LambdaList out;
  for (const auto& x : list) out.push_back(x.transposed());
  return out;
}

// G[(a|a');(b|b'); conj z] = (-1)^{sum k} G[(a'|a);(b'|b); (-1)^{p+q} z]
inline IdentityCheck check_conjugation(const GParams& g, cplx z, double tol) {
  int k_sum = 0;
  for (const auto& x : g.a_list()) k_sum += x.k;
  for (const auto& x : g.b_list()) k_sum += x.k;
  const GParams t(transposed(g.a_list()), transposed(g.b_list()));
  const cplx lhs = g_eval(g, std::conj(z)).value;
  const cplx rhs = neg_one_power(k_sum) * g_eval(t, neg_one_power(g.p() + g.q()) * z).value;
  return make_check("conjugation", "identities", detail::rel_diff(lhs, rhs), tol, detail::describe(g, z));
}

// Appending c to (a) and 1-c to (b): the reflection formula leaves (-1)^{k_c + k}
// in the summand, i.e. the sign of z flips.
inline IdentityCheck check_cancellation(const GParams& g, LambdaPoint c, cplx z, double tol) {
  LambdaList a = g.a_list();
  LambdaList b = g.b_list();
  a.push_back(c);
  b.push_back(kOne - c);
  const GParams big(a, b);
  const cplx lhs = g_eval(big, z).value;
  const cplx rhs = neg_one_power(c) * g_eval(g, -z).value;
  return make_check("cancellation", "identities", detail::rel_diff(lhs, rhs), tol,
                    detail::describe(g, z) + " c=" + format_lambda(c));
}

inline IdentityCheck check_shift(const GParams& g, LambdaPoint c, cplx z, double tol) {
  const GParams moved(shifted(g.a_list(), c), shifted(g.b_list(), -c));
  const cplx lhs = double_power(z, c) * g_eval(g, z).value;
  const cplx rhs = g_eval(moved, z).value;
  return make_check("shift", "identities", detail::rel_diff(lhs, rhs), tol,
                    detail::describe(g, z) + " c=" + format_lambda(c));
}

enum class Contiguous { ADiff1, ADiff2, ADiff3, ADiff4 };

inline const char* contiguous_name(Contiguous w) {
  switch (w) {
    case Contiguous::ADiff1: return "contiguous_a";
    case Contiguous::ADiff2: return "contiguous_b";
    case Contiguous::ADiff3: return "contiguous_a_prime";
    case Contiguous::ADiff4: return "contiguous_b_prime";
  }
  return "?";
}

struct EulerDerivatives {
  cplx value{0.0, 0.0};
  cplx theta{0.0, 0.0};      // z d/dz
  cplx theta_bar{0.0, 0.0};  // conj(z) d/dconj(z)
};

// Central differences in Re z and Im z.
inline EulerDerivatives euler_derivatives(const std::function<cplx(cplx)>& f, cplx z) {
  const double h = 1e-5 * std::max(1.0, std::abs(z));
  const cplx dx = (f(z + h) - f(z - h)) / (2.0 * h);
  const cplx dy = (f(z + cplx(0.0, h)) - f(z - cplx(0.0, h))) / (2.0 * h);
  const cplx d = 0.5 * (dx - cplx(0.0, 1.0) * dy);
  const cplx d_bar = 0.5 * (dx + cplx(0.0, 1.0) * dy);
  return {f(z), z * d, std::conj(z) * d_bar};
}

inline LambdaList replace(const LambdaList& list, std::size_t j, LambdaPoint x) {
  LambdaList out = list;
  out[j] = x;
  return out;
}

inline IdentityCheck check_contiguous(const GParams& g, cplx z, int index, Contiguous which, double tol = 1e-5) {
  const auto f = [&](cplx w) { return g_eval(g, w).value; };
  const EulerDerivatives d = euler_derivatives(f, z);
  cplx lhs, rhs;
  cplx scale_term;
  const std::size_t j = std::size_t(index);
  switch (which) {
    case Contiguous::ADiff1: {
      const LambdaPoint x = g.a_list()[j];
      lhs = -d.theta + x.a() * d.value;
      rhs = g_eval(GParams(replace(g.a_list(), j, x + kShiftA), g.b_list()), z).value;
      scale_term = x.a() * d.value;
      break;
    }
    case Contiguous::ADiff2: {
      const LambdaPoint x = g.b_list()[j];
      lhs = d.theta + x.a() * d.value;
      rhs = g_eval(GParams(g.a_list(), replace(g.b_list(), j, x + kShiftA)), z).value;
      scale_term = x.a() * d.value;
      break;
    }
    case Contiguous::ADiff3: {
      const LambdaPoint x = g.a_list()[j];
      lhs = -d.theta_bar + x.a_prime() * d.value;
      rhs = -g_eval(GParams(replace(g.a_list(), j, x + kShiftAPrime), g.b_list()), z).value;
      scale_term = x.a_prime() * d.value;
      break;
    }
    case Contiguous::ADiff4: {
      const LambdaPoint x = g.b_list()[j];
      lhs = d.theta_bar + x.a_prime() * d.value;
      rhs = -g_eval(GParams(g.a_list(), replace(g.b_list(), j, x + kShiftAPrime)), z).value;
      scale_term = x.a_prime() * d.value;
      break;
    }
  }
  const double scale = std::max({std::abs(d.theta), std::abs(d.theta_bar), std::abs(scale_term)});
  return make_check(contiguous_name(which), "identities", detail::rel_diff(lhs, rhs, scale), tol,
                    detail::describe(g, z) + " index=" + std::to_string(index));
}

// G[a_j + 1] - G[a_m + 1] = (a_j - a_m) G
inline IdentityCheck check_recombination_aa(const GParams& g, cplx z, int j, int m, double tol) {
  const LambdaList& as = g.a_list();
  const cplx gj = g_eval(GParams(replace(as, j, as[j] + kShiftA), g.b_list()), z).value;
  const cplx gm = g_eval(GParams(replace(as, m, as[m] + kShiftA), g.b_list()), z).value;
  const cplx rhs = (as[j].a() - as[m].a()) * g_eval(g, z).value;
  return make_check("recombination_aa", "identities", detail::rel_diff(gj - gm, rhs, std::max(std::abs(gj), std::abs(gm))),
                    tol, detail::describe(g, z) + " j=" + std::to_string(j) + " m=" + std::to_string(m));
}

// G[a_j + 1] + G[b_m + 1] = (a_j + b_m) G
inline IdentityCheck check_recombination_ab(const GParams& g, cplx z, int j, int m, double tol) {
  const LambdaList& as = g.a_list();
  const LambdaList& bs = g.b_list();
  const cplx ga = g_eval(GParams(replace(as, j, as[j] + kShiftA), bs), z).value;
  const cplx gb = g_eval(GParams(as, replace(bs, m, bs[m] + kShiftA)), z).value;
  const cplx rhs = (as[j].a() + bs[m].a()) * g_eval(g, z).value;
  return make_check("recombination_ab", "identities", detail::rel_diff(ga + gb, rhs, std::max(std::abs(ga), std::abs(gb))),
                    tol, detail::describe(g, z) + " j=" + std::to_string(j) + " m=" + std::to_string(m));
}

// ---- differential system ----

namespace detail {

// Coefficients of prod (x + roots[i]) in ascending powers.
inline std::vector<cplx> poly_from_shifts(std::span<const cplx> roots) {
  std::vector<cplx> c{1.0};
  for (const cplx& r : roots) {
    std::vector<cplx> next(c.size() + 1, 0.0);
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i] += r * c[i];
      next[i + 1] += c[i];
    }
    c = std::move(next);
  }
  return c;
}

// One-dimensional central stencils of second order accuracy; offsets -2..2.
inline std::array<double, 5> stencil(int order) {
  switch (order) {
    case 0: return {0, 0, 1, 0, 0};
    case 1: return {0, -0.5, 0, 0.5, 0};
    case 2: return {0, 1, -2, 1, 0};
    case 3: return {-0.5, 1, 0, -1, 0.5};
    default: throw Error(ErrorKind::Indeterminate, "derivative order above 3");
  }
}

}  // namespace detail

struct PdeResidual {
  double relative = 0.0;  // (|D F| + |Dbar F|) / largest term
  cplx holomorphic{0.0, 0.0};
  cplx antiholomorphic{0.0, 0.0};
};

// D = prod(theta - a) - (-1)^q z prod(theta + b), Dbar likewise with primes,
// conj z and (-1)^p; theta = (d_u - i d_phi)/2 in z = exp(u + i phi).
inline PdeResidual pde_residual(const GParams& g, cplx z, double h) {
  const int order = std::max(g.p(), g.q());
  if (order > 3) throw Error(ErrorKind::Indeterminate, "differential check supports p, q <= 3");
  const double u0 = std::log(std::abs(z));
  const double phi0 = std::arg(z);
  const int half = 2;
  std::vector<cplx> grid(25);
  for (int i = -half; i <= half; ++i)
    for (int j = -half; j <= half; ++j) {
      if (order < 3 && (std::abs(i) == 2 || std::abs(j) == 2)) continue;
      grid[(i + 2) * 5 + (j + 2)] = g_eval(g, std::exp(cplx(u0 + i * h, phi0 + j * h))).value;
    }
  // partial_u^s partial_phi^t F
  auto mixed = [&](int s, int t) {
    const auto su = detail::stencil(s);
    const auto sp = detail::stencil(t);
    cplx acc = 0.0;
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j)
        if (su[i] != 0.0 && sp[j] != 0.0) acc += su[i] * sp[j] * grid[i * 5 + j];
    return acc / std::pow(h, s + t);
  };
  // theta^n F (sign = -1) or theta_bar^n F (sign = +1)
  auto euler_power = [&](int n, double sign) {
    cplx acc = 0.0;
    double binom = 1.0;
    for (int t = 0; t <= n; ++t) {
      acc += binom * std::pow(cplx(0.0, sign), t) * mixed(n - t, t);
      binom = binom * (n - t) / (t + 1);
    }
    return acc / std::pow(2.0, n);
  };
  auto apply = [&](const std::vector<cplx>& coef, double sign) {
    cplx acc = 0.0;
    for (std::size_t n = 0; n < coef.size(); ++n) acc += coef[n] * euler_power(int(n), sign);
    return acc;
  };
  std::vector<cplx> minus_a, plus_b, minus_a_prime, plus_b_prime;
  for (const auto& x : g.a_list()) {
    minus_a.push_back(-x.a());
    minus_a_prime.push_back(-x.a_prime());
  }
  for (const auto& x : g.b_list()) {
    plus_b.push_back(x.a());
    plus_b_prime.push_back(x.a_prime());
  }
  const cplx t1 = apply(detail::poly_from_shifts(minus_a), -1.0);
  const cplx t2 = neg_one_power(g.q()) * z * apply(detail::poly_from_shifts(plus_b), -1.0);
  const cplx t3 = apply(detail::poly_from_shifts(minus_a_prime), 1.0);
  const cplx t4 = neg_one_power(g.p()) * std::conj(z) * apply(detail::poly_from_shifts(plus_b_prime), 1.0);
  PdeResidual out;
  out.holomorphic = t1 - t2;
  out.antiholomorphic = t3 - t4;
  const double scale = std::max({std::abs(t1), std::abs(t2), std::abs(t3), std::abs(t4), std::abs(grid[12])});
  out.relative = (std::abs(out.holomorphic) + std::abs(out.antiholomorphic)) / scale;
  return out;
}

inline IdentityCheck check_pde_fd(const GParams& g, cplx z, double h = 1e-3, double tol = 1e-4) {
  return make_check("differential_system", "pde", pde_residual(g, z, h).relative, tol,
                    detail::describe(g, z) + " h=" + std::to_string(h));
}

// Composing the contiguous relations turns D G = 0 into
//   G[(a)+1|0; (b)] = z G[(a); (b)+1|0]   and   G[(a)+0|1; (b)] = conj(z) G[(a); (b)+0|1].
inline PdeResidual pde_residual_contiguous(const GParams& g, cplx z) {
  const cplx up_a = g_eval(GParams(shifted(g.a_list(), kShiftA), g.b_list()), z).value;
  const cplx up_b = g_eval(GParams(g.a_list(), shifted(g.b_list(), kShiftA)), z).value;
  const cplx up_a_prime = g_eval(GParams(shifted(g.a_list(), integer_point(0, 1)), g.b_list()), z).value;
  const cplx up_b_prime = g_eval(GParams(g.a_list(), shifted(g.b_list(), integer_point(0, 1))), z).value;
  PdeResidual out;
  out.holomorphic = up_a - z * up_b;
  out.antiholomorphic = up_a_prime - std::conj(z) * up_b_prime;
  const double scale = std::max({std::abs(up_a), std::abs(z * up_b), std::abs(up_a_prime), std::abs(z * up_b_prime)});
  out.relative = (std::abs(out.holomorphic) + std::abs(out.antiholomorphic)) / scale;
  return out;
}

// Exact composition when the shifted parameters stay collision-free, finite differences otherwise.
inline IdentityCheck check_pde(const GParams& g, cplx z, double tol = 1e-8) {
  const bool clean = detect_collisions(GParams(g.a_list(), shifted(g.b_list(), kShiftA))).empty() &&
                     detect_collisions(GParams(g.a_list(), shifted(g.b_list(), integer_point(0, 1)))).empty();
  if (!clean) return check_pde_fd(g, z);
  return make_check("differential_system", "pde", pde_residual_contiguous(g, z).relative, tol, detail::describe(g, z));
}

// Ratio of residuals at h and h/2; second order stencils give about 4.
inline IdentityCheck check_pde_order(const GParams& g, cplx z, double h = 1e-3) {
  const double r1 = pde_residual(g, z, h).relative;
  const double r2 = pde_residual(g, z, 0.5 * h).relative;
  const double ratio = r1 / r2;
  return make_check("differential_system_order", "pde", std::abs(ratio - 4.0), 1.0,
                    detail::describe(g, z) + " ratio=" + std::to_string(ratio));
}

// ---- multiplication ----

struct MultiplicationFit {
  std::vector<cplx> ratios;  // LHS / sum over roots, one per z
  cplx mean{0.0, 0.0};
  double spread = 0.0;       // max relative deviation from the mean
  cplx predicted{0.0, 0.0};  // m^{p+q-2-m*sum(sigma)}
};

inline GParams replicated(const GParams& g, int m) {
  LambdaList a, b;
  for (const auto& x : g.a_list())
    for (int j = 0; j < m; ++j) a.push_back(add_scalar(x, double(j) / m));
  for (const auto& x : g.b_list())
    for (int j = 0; j < m; ++j) b.push_back(add_scalar(x, double(j) / m));
  return GParams(a, b);
}

inline cplx root_sum(const GParams& g, int m, cplx z) {
  LambdaList a, b;
  for (const auto& x : g.a_list()) a.push_back(m * x);
  for (const auto& x : g.b_list()) b.push_back(m * x);
  const GParams scaled(a, b);
  const cplx root = std::polar(std::pow(std::abs(z), 1.0 / m), principal_arg(z) / m) * std::pow(double(m), g.q() - g.p());
  cplx sum = 0.0;
  for (int l = 0; l < m; ++l) sum += g_eval(scaled, std::polar(1.0, 2.0 * std::numbers::pi * l / m) * root).value;
  return sum;
}

inline MultiplicationFit fit_multiplication(const GParams& g, int m, std::span<const cplx> zs) {
  MultiplicationFit fit;
  const GParams big = replicated(g, m);
  for (cplx z : zs) fit.ratios.push_back(g_eval(big, z).value / root_sum(g, m, z));
  for (cplx r : fit.ratios) fit.mean += r;
  fit.mean /= double(fit.ratios.size());
  for (cplx r : fit.ratios) fit.spread = std::max(fit.spread, std::abs(r - fit.mean) / std::abs(fit.mean));
  fit.predicted = std::exp((double(g.p() + g.q() - 2) - double(m) * g.sigma_sum()) * std::log(double(m)));
  return fit;
}

inline IdentityCheck check_multiplication(const GParams& g, int m, std::span<const cplx> zs, double tol = 1e-6) {
  if (zs.empty()) throw Error(ErrorKind::Indeterminate, "no sample points");
  const MultiplicationFit fit = fit_multiplication(g, m, zs);
  std::string w = detail::describe(g, zs.front()) + " m=" + std::to_string(m) +
                  " fitted=" + detail::format_cplx(fit.mean) + " predicted=" + detail::format_cplx(fit.predicted);
  return make_check("multiplication", "identities", fit.spread, tol, w);
}

// Five points spread around z; the constant is fitted across them.
inline IdentityCheck check_multiplication(const GParams& g, int m, cplx z, double tol = 1e-6) {
  const std::array<cplx, 5> zs{z, z * std::polar(0.8, 0.4), z * std::polar(1.2, -0.9), z * std::polar(0.9, 2.0),
                               z * std::polar(1.1, -2.5)};
  return check_multiplication(g, m, std::span<const cplx>(zs), tol);
}

// ---- Euler integral for 2F1 over C ----

// Gamma_c(C) / (pi Gamma_c(B) Gamma_c(C-B)) * integral t^{B-1} (1-t)^{C-B-1} (1-zt)^{-A} dA
inline PlaneResult euler_2f1c(LambdaPoint A, LambdaPoint B, LambdaPoint C, cplx z, const PlaneGrid& grid = {}) {
  std::vector<cplx> centers{0.0, 1.0};
  if (z != cplx(0.0, 0.0)) centers.push_back(1.0 / z);
  const LambdaPoint e0 = B - kOne;
  const LambdaPoint e1 = C - B - kOne;
  const LambdaPoint e2 = -A;
  auto f = [&](std::size_t i, cplx d) -> cplx {
    const cplx t = centers[i] + d;
    const cplx u0 = (i == 0) ? d : t;
    const cplx u1 = (i == 1) ? -d : 1.0 - t;
    const cplx u2 = (i == 2) ? -z * d : 1.0 - z * t;
    if (u2 == cplx(0.0, 0.0)) return std::exp(log_double_power(u0, e0) + log_double_power(u1, e1));
    return std::exp(log_double_power(u0, e0) + log_double_power(u1, e1) + log_double_power(u2, e2));
  };
  PlaneResult r = integrate_plane(std::span<const cplx>(centers), f, grid);
  const cplx pre = gamma_c_value(C) / (std::numbers::pi * gamma_c_value(B) * gamma_c_value(C - B));
  return {pre * r.value, std::abs(pre) * r.abs_error_estimate};
}

// 1/2 Gamma_c(C) (-1)^{k_C} / (Gamma_c(A) Gamma_c(B)) * 2G2[(0|0, 1-C); (A, B); z]
inline cplx gauss_from_g22(LambdaPoint A, LambdaPoint B, LambdaPoint C, cplx z) {
  const GParams g({LambdaPoint{0, 0.0}, kOne - C}, {A, B});
  return 0.5 * gamma_c_value(C) * neg_one_power(C) / (gamma_c_value(A) * gamma_c_value(B)) * g_eval(g, z).value;
}

inline IdentityCheck check_gauss_euler(LambdaPoint A, LambdaPoint B, LambdaPoint C, cplx z, double tol = 1e-3) {
  const cplx lhs = euler_2f1c(A, B, C, z).value;
  const cplx rhs = gauss_from_g22(A, B, C, z);
  return make_check("gauss_euler", "euler", detail::rel_diff(lhs, rhs), tol,
                    "A=" + format_lambda(A) + " B=" + format_lambda(B) + " C=" + format_lambda(C) +
                        " z=" + detail::format_cplx(z));
}

// ---- SL(2, C) kernel ----

struct Matrix2 {
  cplx a, b, c, d;
};

inline void require_generic_unimodular(const Matrix2& g) {
  if (std::abs(g.a * g.d - g.b * g.c - 1.0) > 1e-10) throw Error(ErrorKind::NonUnimodular, "det g != 1");
  if (g.a == 0.0 || g.b == 0.0 || g.c == 0.0 || g.d == 0.0)
    throw Error(ErrorKind::DegenerateMatrix, "matrix entries must be nonzero");
}

// (-1)^{k_mu} a^{sig+mu-lam-1} b^{lam} c^{-mu} pi B_c(mu, sig-lam) 2F1_c[-lam, mu; sig-lam+mu; ad/(bc)]
inline cplx vilenkin_kernel(LambdaPoint mu, LambdaPoint lam, LambdaPoint sig, const Matrix2& g) {
  require_generic_unimodular(g);
  const LambdaPoint A = -lam;
  const LambdaPoint B = mu;
  const LambdaPoint C = sig - lam + mu;
  const BetaValue beta = beta_c(B, C - B);
  if (beta.infinite) throw Error(ErrorKind::PoleAtPoint, "beta factor is infinite");
  const cplx x = g.a * g.d / (g.b * g.c);
  const cplx hyper = (lam == LambdaPoint{0, 0.0}) ? cplx(1.0, 0.0) : gauss_from_g22(A, B, C, x);
  const cplx powers = std::exp(log_double_power(g.a, C - kOne) + log_double_power(g.b, lam) + log_double_power(g.c, -mu));
  return neg_one_power(mu) * powers * std::numbers::pi * beta.value * hyper;
}

// integral over C of z^{mu-1} (a+zc)^{sig-lam-1} (b+zd)^{lam} dA(z)
inline PlaneResult vilenkin_direct(LambdaPoint mu, LambdaPoint lam, LambdaPoint sig, const Matrix2& g,
                                   const PlaneGrid& grid = {}) {
  require_generic_unimodular(g);
  const std::vector<cplx> centers{0.0, -g.a / g.c, -g.b / g.d};
  const LambdaPoint e0 = mu - kOne;
  const LambdaPoint e1 = sig - lam - kOne;
  auto f = [&](std::size_t i, cplx d) -> cplx {
    const cplx t = centers[i] + d;
    const cplx u0 = (i == 0) ? d : t;
    const cplx u1 = (i == 1) ? g.c * d : g.a + t * g.c;
    const cplx u2 = (i == 2) ? g.d * d : g.b + t * g.d;
    return std::exp(log_double_power(u0, e0) + log_double_power(u1, e1) + log_double_power(u2, lam));
  };
  return integrate_plane(std::span<const cplx>(centers), f, grid);
}

inline IdentityCheck check_vilenkin(LambdaPoint mu, LambdaPoint lam, LambdaPoint sig, const Matrix2& g,
                                    double tol = 1e-3) {
  const cplx closed = vilenkin_kernel(mu, lam, sig, g);
  const cplx direct = vilenkin_direct(mu, lam, sig, g).value;
  return make_check("vilenkin_kernel", "vilenkin", detail::rel_diff(closed, direct), tol,
                    "mu=" + format_lambda(mu) + " lam=" + format_lambda(lam) + " sig=" + format_lambda(sig));
}

// ---- convolution and Mellin ----

inline IdentityCheck check_convolution(const GParams& g1, const GParams& g2, cplx t, double tol = 1e-3) {
  const cplx lhs = convolve_g(g1, g2, t).value;
  const GParams merged(concat(g1.a_list(), g2.a_list()), concat(g1.b_list(), g2.b_list()));
  const cplx rhs = g_eval(merged, t).value;
  return make_check("convolution", "convolution", detail::rel_diff(lhs, rhs), tol,
                    detail::describe(g1, t) + " with " + format_lambda_list(g2.a_list()) + "/" +
                        format_lambda_list(g2.b_list()));
}

// Residues at the right poles: coeff * z^{exponent}, with n + n' <= order.
// For q > p these give the algebraic part of the expansion at infinity.
struct PowerTerm {
  LambdaPoint exponent;
  cplx coeff{0.0, 0.0};
};

inline std::vector<PowerTerm> right_pole_terms(const GParams& g, int order) {
  std::vector<PowerTerm> out;
  const LambdaList& as = g.a_list();
  const LambdaList& bs = g.b_list();
  const int p = g.p();
  for (int j = 0; j < p; ++j) {
    const LambdaPoint bj = bs[j];
    cplx pre = 2.0;
    for (const auto& a : as) pre *= gamma_c_value(a + bj);
    for (int l = 0; l < p; ++l)
      if (l != j) pre *= gamma_c_value(bs[l] - bj);
    std::vector<cplx> plain(order + 1, 1.0), primed(order + 1, 1.0);
    for (int n = 0; n < order; ++n) {
      cplx r = neg_one_power(p) / double(n + 1);
      cplx rp = neg_one_power(g.q()) / double(n + 1);
      for (const auto& a : as) {
        r *= a.a() + bj.a() + double(n);
        rp *= a.a_prime() + bj.a_prime() + double(n);
      }
      for (int l = 0; l < p; ++l)
        if (l != j) {
          r /= 1.0 - bs[l].a() + bj.a() + double(n);
          rp /= 1.0 - bs[l].a_prime() + bj.a_prime() + double(n);
        }
      plain[n + 1] = plain[n] * r;
      primed[n + 1] = primed[n] * rp;
    }
    for (int n = 0; n <= order; ++n)
      for (int m = 0; n + m <= order; ++m) out.push_back({-(bj + integer_point(n, m)), pre * plain[n] * primed[m]});
  }
  return out;
}

struct MellinSetup {
  double log_radius = 2.5;  // series region |t| <= e^{log_radius}
  int tail_order = 3;
  PlaneGrid grid{-150.0, 40.0, 0.5, 256, 1e-13};
};

// Mellin coefficient of a q > p G-function: the series inside |t| <= R plus the
// closed-form transform of the right-pole terms outside. The dropped remainder
// oscillates and decays once Re(point) is near the left edge of the strip.
inline cplx mellin_of_g(const GParams& g, LambdaPoint point, const MellinSetup& setup = {}) {
  if (g.q() <= g.p()) throw Error(ErrorKind::Indeterminate, "Mellin check needs q > p");
  PlaneGrid grid = setup.grid;
  grid.x_max = setup.log_radius;
  const cplx inner = mellin_forward([&](cplx t) { return g_value_for_integrand(g, t); }, point, QuadConfig{}, grid);
  cplx outer = 0.0;
  for (const PowerTerm& t : right_pole_terms(g, setup.tail_order)) {
    if (t.exponent.k != -point.k) continue;
    const cplx e = point.sigma + t.exponent.sigma;
    if (e.real() >= 0.0) throw Error(ErrorKind::Indeterminate, "point outside the Mellin strip");
    outer -= t.coeff * std::exp(e * setup.log_radius) / e;
  }
  return inner + outer;
}

inline IdentityCheck check_mellin(const GParams& g, LambdaPoint point, double tol = 1e-3, const MellinSetup& setup = {}) {
  const cplx m = mellin_of_g(g, point, setup);
  const cplx k = kernel_eval(g, point);
  return make_check("mellin", "convolution", detail::rel_diff(m, k), tol,
                    detail::describe(g, 1.0) + " point=" + format_lambda(point));
}

}  // namespace hypc
