#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <limits>
#include <optional>

#include "hypc/error.hpp"
#include "hypc/lambda.hpp"

namespace hypc {

namespace detail {

inline constexpr double kLanczosG = 7.0;
inline constexpr std::array<double, 9> kLanczosCoef = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

inline const double kHalfLog2Pi = 0.5 * std::log(2.0 * std::numbers::pi);
inline const double kLogPi = std::log(std::numbers::pi);

// Lanczos sum for Re z >= 0.5.
inline cplx lanczos_log_gamma(cplx z) {
  z -= 1.0;
  cplx x = kLanczosCoef[0];
  for (std::size_t i = 1; i < kLanczosCoef.size(); ++i) x += kLanczosCoef[i] / (z + double(i));
  const cplx t = z + kLanczosG + 0.5;
  return kHalfLog2Pi + (z + 0.5) * std::log(t) - t + std::log(x);
}

// sin(pi z) with the real part reduced first, so values near integers keep
// full relative accuracy.
inline cplx sin_pi(cplx z) {
  const double n = std::round(z.real());
  const cplx r = z - n;
  const cplx s = std::sin(std::numbers::pi * r);
  return (std::fmod(std::abs(n), 2.0) == 1.0) ? -s : s;
}

// log sin(pi z) on the branch that makes the reflection formula reproduce
// the analytic continuation of log Gamma from the positive axis (Im z >= 0).
inline cplx log_sin_pi_upper(cplx z) {
  using std::numbers::pi;
  const cplx w = std::exp(cplx(0.0, 2.0 * pi) * z);
  const cplx branch = cplx(0.0, -pi) * z + cplx(-std::log(2.0), 0.5 * pi) + std::log(1.0 - w);
  if (z.imag() > 1.0) return branch;
  const cplx accurate = std::log(sin_pi(z));
  const double turns = std::round((branch - accurate).imag() / (2.0 * pi));
  return accurate + cplx(0.0, 2.0 * pi * turns);
}

inline bool is_nonpositive_integer(cplx z) {
  return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::round(z.real());
}

// Distance from z to the nearest nonpositive integer, and that integer.
inline double distance_to_pole(cplx z, int* which = nullptr) {
  double n = std::round(z.real());
  if (n > 0.0) n = 0.0;
  if (which) *which = int(n);
  return std::abs(z - n);
}

}  // namespace detail

// Principal branch of log Gamma (continuous from the positive real axis,
// cut along the negative real axis approached from above).
inline cplx log_gamma_complex(cplx z) {
  if (detail::is_nonpositive_integer(z)) throw Error(ErrorKind::PoleAtPoint, "log Gamma at a nonpositive integer");
  if (z.real() >= 0.5) return detail::lanczos_log_gamma(z);
  if (z.imag() >= 0.0)
    return detail::kLogPi - detail::log_sin_pi_upper(z) - detail::lanczos_log_gamma(1.0 - z);
  return std::conj(detail::kLogPi - detail::log_sin_pi_upper(std::conj(z)) -
                   detail::lanczos_log_gamma(1.0 - std::conj(z)));
}

inline constexpr double kPoleTol = 1e-9;
inline constexpr double kFormSwitch = 0.05;

struct GammaValue {
  cplx value{0.0, 0.0};
  bool is_pole = false;
  std::optional<cplx> residue;
};

inline cplx gamma_c_residue(int m, int m_prime) {
  if (m < 0 || m_prime < 0) throw Error(ErrorKind::PoleAtPoint, "residue indices must be nonnegative");
  return neg_one_power(m) / (std::tgamma(m + 1.0) * std::tgamma(m_prime + 1.0));
}

// Gamma^C in logarithmic form. `zero` marks an exact zero; poles are flagged
// with their (m, m') so callers can decide what a pole means for them.
struct LogGammaC {
  cplx log{0.0, 0.0};
  bool zero = false;
  bool pole = false;
  int m = 0;
  int m_prime = 0;
};

inline LogGammaC log_gamma_c(LambdaPoint p) {
  const cplx a = p.a();
  const cplx ap = p.a_prime();
  int na = 0;
  int nap = 0;
  const double da = detail::distance_to_pole(a, &na);
  const double dap = detail::distance_to_pole(ap, &nap);
  LogGammaC out;
  if (da <= kPoleTol && dap <= kPoleTol) {
    out.pole = true;
    out.m = -na;
    out.m_prime = -nap;
    return out;
  }
  if (da < kFormSwitch) {
    // (-1)^k Gamma(a') / Gamma(1 - a); here 1 - a sits near a positive integer.
    const cplx one_minus_a = (da <= kPoleTol) ? cplx(1.0 - na, 0.0) : 1.0 - a;
    out.log = log_gamma_complex(ap) - log_gamma_complex(one_minus_a);
    if (p.k % 2 != 0) out.log += cplx(0.0, std::numbers::pi);
    return out;
  }
  // Gamma(a) / Gamma(1 - a'); 1/Gamma vanishes when a' is a positive integer.
  const cplx one_minus_ap = 1.0 - ap;
  int n1 = 0;
  if (detail::distance_to_pole(one_minus_ap, &n1) <= kPoleTol) {
    out.zero = true;
    return out;
  }
  out.log = log_gamma_complex(a) - log_gamma_complex(one_minus_ap);
  return out;
}

inline GammaValue gamma_c(LambdaPoint p) {
  const LogGammaC lg = log_gamma_c(p);
  GammaValue out;
  if (lg.pole) {
    out.is_pole = true;
    out.value = cplx(std::numeric_limits<double>::infinity(), 0.0);
    out.residue = gamma_c_residue(lg.m, lg.m_prime);
    return out;
  }
  out.value = lg.zero ? cplx(0.0, 0.0) : std::exp(lg.log);
  return out;
}

// Convenience for finite points; throws PoleAtPoint at a pole.
inline cplx gamma_c_value(LambdaPoint p) {
  const GammaValue g = gamma_c(p);
  if (g.is_pole) throw Error(ErrorKind::PoleAtPoint, "Gamma^C pole at " + format_lambda(p));
  return g.value;
}

struct BetaValue {
  cplx value{0.0, 0.0};
  bool infinite = false;
};

inline BetaValue beta_c(LambdaPoint p, LambdaPoint q) {
  const LogGammaC x = log_gamma_c(p);
  const LogGammaC y = log_gamma_c(q);
  const LogGammaC d = log_gamma_c(p + q);
  const bool num_pole = x.pole || y.pole;
  const bool num_zero = !num_pole && (x.zero || y.zero);
  if (num_pole && d.pole) throw Error(ErrorKind::Indeterminate, "pole over pole");
  if (num_zero && d.zero) throw Error(ErrorKind::Indeterminate, "zero over zero");
  if (num_pole || d.zero) return {cplx(std::numeric_limits<double>::infinity(), 0.0), true};
  if (num_zero || d.pole) return {cplx(0.0, 0.0), false};
  return {std::exp(x.log + y.log - d.log), false};
}

// Leading Stirling term of Gamma^C(a + xi | a' - conj(xi)) where the shift is
// the lattice point xi = (k, i s), i.e. xi = (k + i s)/2 as a complex number.
inline cplx gamma_c_asymptotic(LambdaPoint base, LambdaPoint xi) {
  const cplx x = xi.a();
  const cplx phase = x * std::log(x) - x;
  const LambdaPoint exponent{base.k, base.sigma - 1.0};
  return std::exp(cplx(0.0, 2.0 * phase.imag()) + log_double_power(x, exponent));
}

}  // namespace hypc
