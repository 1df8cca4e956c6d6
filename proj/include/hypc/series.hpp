#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <span>
#include <vector>

#include "hypc/error.hpp"
#include "hypc/lambda.hpp"

namespace hypc {

inline constexpr double kCircleDelta = 1e-3;

inline cplx pochhammer(cplx a, int m) {
  cplx out = 1.0;
  for (int i = 0; i < m; ++i) out *= a + double(i);
  return out;
}

// Compensated accumulator for complex sums.
struct KahanSum {
  cplx sum{0.0, 0.0};
  cplx compensation{0.0, 0.0};

  KahanSum& operator+=(cplx x) {
    const cplx y = x - compensation;
    const cplx t = sum + y;
    compensation = (t - sum) - y;
    sum = t;
    return *this;
  }
};

struct SeriesConfig {
  double tol_rel = 1e-17;
  double tol_abs = 0.0;
  int max_terms = 20000;
};

struct SeriesResult {
  cplx value{0.0, 0.0};
  double abs_error_estimate = 0.0;
  int terms_used = 0;
};

// Generalized hypergeometric series rFs[num; den; z].
inline SeriesResult hyp_pfq(std::span<const cplx> num, std::span<const cplx> den, cplx z,
                            const SeriesConfig& cfg = {}) {
  for (const cplx& b : den) {
    const double n = std::round(b.real());
    if (n <= 0.0 && std::abs(b - n) <= kLatticeTol)
      throw Error(ErrorKind::DenominatorPole, "denominator parameter at a nonpositive integer");
  }
  const bool terminates = [&] {
    for (const cplx& a : num) {
      const double n = std::round(a.real());
      if (n <= 0.0 && a == cplx(n, 0.0)) return true;
    }
    return false;
  }();
  if (!terminates) {
    if (num.size() > den.size() + 1) throw Error(ErrorKind::SeriesDivergent, "r > s + 1");
    if (num.size() == den.size() + 1 && std::abs(z) >= 1.0 - kCircleDelta)
      throw Error(ErrorKind::SeriesDivergent, "r = s + 1 outside the disk |z| < 1 - delta");
  }

  // binomial series: (1 - z)^(-a), principal branch inside the disk
  if (num.size() == 1 && den.empty() && !terminates) {
    SeriesResult out;
    out.value = std::exp(-num[0] * std::log(1.0 - z));
    out.terms_used = 1;
    out.abs_error_estimate = 8.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(num[0])) * std::abs(out.value);
    return out;
  }

  KahanSum acc;
  cplx term = 1.0;
  double magnitude_sum = 0.0;
  int small_in_a_row = 0;
  int n = 0;
  for (; n < cfg.max_terms; ++n) {
    acc += term;
    magnitude_sum += std::abs(term);
    const double threshold = cfg.tol_rel * std::abs(acc.sum) + cfg.tol_abs;
    if (std::abs(term) <= threshold) {
      if (++small_in_a_row == 2) break;
    } else {
      small_in_a_row = 0;
    }
    if (term == cplx(0.0, 0.0) && terminates) break;
    cplx ratio = z / double(n + 1);
    for (const cplx& a : num) ratio *= a + double(n);
    for (const cplx& b : den) ratio /= b + double(n);
    term *= ratio;
  }
  if (n == cfg.max_terms) throw Error(ErrorKind::BudgetExceeded, "series did not converge within the term cap");

  SeriesResult out;
  out.value = acc.sum;
  out.terms_used = n + 1;
  out.abs_error_estimate = 2.0 * std::abs(term) + 4.0 * std::numeric_limits<double>::epsilon() * magnitude_sum;
  return out;
}

inline SeriesResult hyp_pfq(const std::vector<cplx>& num, const std::vector<cplx>& den, cplx z,
                            const SeriesConfig& cfg = {}) {
  return hyp_pfq(std::span<const cplx>(num), std::span<const cplx>(den), z, cfg);
}

}  // namespace hypc
