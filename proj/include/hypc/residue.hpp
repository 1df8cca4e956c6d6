#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "hypc/error.hpp"
#include "hypc/gamma.hpp"
#include "hypc/kernel.hpp"
#include "hypc/lambda.hpp"
#include "hypc/series.hpp"

namespace hypc {

enum class Engine { ResidueSeries, Quadrature };

inline const char* engine_name(Engine e) { return e == Engine::ResidueSeries ? "series" : "quad"; }

struct Diagnostics {
  std::string branch;           // "sigma_plus", "sigma_minus", "quad_lines", "quad_kernel_sum"
  int summands = 0;             // j-summands of the residue sum
  std::vector<int> terms;       // series terms per factor
  int k_min = 0, k_max = 0;     // k-range used by quadrature
  long evaluations = 0;         // kernel evaluations used by quadrature
  Convergence convergence = Convergence::Absolute;
};

struct EvalResult {
  cplx value{0.0, 0.0};
  double abs_error_estimate = 0.0;
  Engine engine = Engine::ResidueSeries;
  Diagnostics diagnostics;
};

namespace detail {

inline bool near_integer(cplx x, double tol) {
  return std::abs(x - std::round(x.real())) <= tol;
}

inline constexpr double kResonanceTol = 1e-8;

}  // namespace detail

// Residue sum over the left poles, valid for q > p everywhere and for p = q inside |z| < 1.
inline EvalResult sigma_plus(const GParams& g, cplx z, const SeriesConfig& cfg = {}) {
  if (z == cplx(0.0, 0.0)) throw Error(ErrorKind::ZeroBase, "z = 0");
  const LambdaList& as = g.a_list();
  const LambdaList& bs = g.b_list();
  const int p = g.p();
  const int q = g.q();

  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q; ++j) {
      if (i == j) continue;
      const LambdaPoint d = as[i] - as[j];
      if (detail::near_integer(d.a(), detail::kResonanceTol) && detail::near_integer(d.a_prime(), detail::kResonanceTol))
        throw Error(ErrorKind::ResonantParameters,
                    "parameters " + format_lambda(as[i]) + " and " + format_lambda(as[j]) + " differ by a lattice integer");
    }

  EvalResult out;
  out.engine = Engine::ResidueSeries;
  out.diagnostics.branch = "sigma_plus";
  out.diagnostics.summands = q;
  out.diagnostics.convergence = classify_convergence(g).kind;

  const cplx z_plain = (q % 2 == 0) ? z : -z;
  const cplx z_conj = (p % 2 == 0) ? std::conj(z) : -std::conj(z);
  constexpr double eps = std::numeric_limits<double>::epsilon();

  KahanSum total;
  double err = 0.0;
  std::vector<cplx> num(p), num_prime(p), den(std::max(q - 1, 0)), den_prime(std::max(q - 1, 0));
  for (int j = 0; j < q; ++j) {
    const LambdaPoint aj = as[j];
    LogValue prefactor;
    prefactor.log = log_double_power(z, aj);
    auto multiply = [&](LambdaPoint x, ErrorKind on_pole) {
      const LogGammaC f = log_gamma_c(x);
      if (f.pole) throw Error(on_pole, "singular gamma factor at " + format_lambda(x));
      if (f.zero) prefactor.zero = true;
      prefactor.log += f.log;
    };
    for (int b = 0; b < p; ++b) multiply(bs[b] + aj, ErrorKind::ParameterCollision);
    for (int i = 0, n = 0; i < q; ++i) {
      if (i == j) continue;
      multiply(as[i] - aj, ErrorKind::ResonantParameters);
      den[n] = 1.0 - as[i].a() + aj.a();
      den_prime[n] = 1.0 - as[i].a_prime() + aj.a_prime();
      ++n;
    }
    if (prefactor.zero) {
      out.diagnostics.terms.push_back(0);
      out.diagnostics.terms.push_back(0);
      continue;
    }
    for (int b = 0; b < p; ++b) {
      num[b] = bs[b].a() + aj.a();
      num_prime[b] = bs[b].a_prime() + aj.a_prime();
    }
    const SeriesResult f1 = hyp_pfq(num, den, z_plain, cfg);
    const SeriesResult f2 = hyp_pfq(num_prime, den_prime, z_conj, cfg);
    out.diagnostics.terms.push_back(f1.terms_used);
    out.diagnostics.terms.push_back(f2.terms_used);

    const cplx pre = std::exp(prefactor.log);
    const cplx term = 2.0 * pre * f1.value * f2.value;
    total += term;
    err += 2.0 * std::abs(pre) * (f1.abs_error_estimate * std::abs(f2.value) + std::abs(f1.value) * f2.abs_error_estimate) +
           8.0 * double(p + q + 2) * eps * std::abs(term);
  }
  out.value = total.sum;
  out.abs_error_estimate = err;
  return out;
}

// Residue sum over the right poles: the swapped parameters at 1/z.
inline EvalResult sigma_minus(const GParams& g, cplx z, const SeriesConfig& cfg = {}) {
  if (z == cplx(0.0, 0.0)) throw Error(ErrorKind::ZeroBase, "z = 0");
  EvalResult out = sigma_plus(g.swapped(), 1.0 / z, cfg);
  out.diagnostics.branch = "sigma_minus";
  out.diagnostics.convergence = classify_convergence(g).kind;
  return out;
}

// Picks the convergent residue sum. Inputs outside the convergence range of
// the line integral are still evaluated; the class is reported in diagnostics.
inline EvalResult g_eval_series(const GParams& g, cplx z, const SeriesConfig& cfg = {}) {
  if (z == cplx(0.0, 0.0)) throw Error(ErrorKind::ZeroBase, "z = 0");
  if (!detect_collisions(g).empty()) throw Error(ErrorKind::ParameterCollision, "left and right poles collide");
  if (g.q() > g.p()) return sigma_plus(g, z, cfg);
  if (g.q() < g.p()) return sigma_minus(g, z, cfg);
  const double r = std::abs(z);
  if (r < 1.0 - kCircleDelta) return sigma_plus(g, z, cfg);
  if (r > 1.0 / (1.0 - kCircleDelta)) return sigma_minus(g, z, cfg);
  throw Error(ErrorKind::OnUnitCircle, "p = q and |z| is within the unit-circle band");
}

}  // namespace hypc
