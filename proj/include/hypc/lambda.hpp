#pragma once

#include <charconv>
#include <cmath>
#include <complex>
#include <cstdio>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include "hypc/error.hpp"

namespace hypc {

using cplx = std::complex<double>;

inline constexpr double kLatticeTol = 1e-9;

// A point a|a' of the lattice, stored as k = a - a' and sigma = a + a'.
struct LambdaPoint {
  int k = 0;
  cplx sigma{0.0, 0.0};

  cplx a() const { return 0.5 * (double(k) + sigma); }
  cplx a_prime() const { return 0.5 * (double(-k) + sigma); }

  friend LambdaPoint operator+(LambdaPoint x, LambdaPoint y) { return {x.k + y.k, x.sigma + y.sigma}; }
  friend LambdaPoint operator-(LambdaPoint x, LambdaPoint y) { return {x.k - y.k, x.sigma - y.sigma}; }
  friend LambdaPoint operator-(LambdaPoint x) { return {-x.k, -x.sigma}; }
  friend LambdaPoint operator*(int n, LambdaPoint x) { return {n * x.k, double(n) * x.sigma}; }
  friend bool operator==(const LambdaPoint&, const LambdaPoint&) = default;

  // the transposed point a'|a
  LambdaPoint transposed() const { return {-k, sigma}; }
};

// 1|0, 0|1 and 1|1.
inline constexpr LambdaPoint kShiftA{1, {1.0, 0.0}};
inline constexpr LambdaPoint kShiftAPrime{-1, {1.0, 0.0}};
inline constexpr LambdaPoint kOne{0, {2.0, 0.0}};

// m|m' for integers m, m'.
inline LambdaPoint integer_point(int m, int m_prime) {
  return {m - m_prime, cplx(double(m + m_prime), 0.0)};
}

// Adds the same complex number h to both components: (a+h | a'+h).
inline LambdaPoint add_scalar(LambdaPoint p, cplx h) { return {p.k, p.sigma + 2.0 * h}; }

inline LambdaPoint lambda_from_ab(cplx a, cplx a_prime) {
  const cplx diff = a - a_prime;
  const double k = std::round(diff.real());
  if (std::abs(diff - cplx(k, 0.0)) > kLatticeTol)
    throw Error(ErrorKind::NotOnLattice, "a - a' is not an integer");
  return {int(k), a + a_prime};
}

// Principal argument in (-pi, pi]; a negative real axis with a signed zero
// imaginary part still maps to +pi.
inline double principal_arg(cplx z) {
  if (z.imag() == 0.0 && z.real() < 0.0) return std::numbers::pi;
  return std::arg(z);
}

// log of z^{a|a'}: i k arg z + sigma ln|z|.
inline cplx log_double_power(cplx z, LambdaPoint p) {
  if (z == cplx(0.0, 0.0)) throw Error(ErrorKind::ZeroBase, "double power of zero");
  return cplx(0.0, double(p.k) * principal_arg(z)) + p.sigma * std::log(std::abs(z));
}

inline cplx double_power(cplx z, LambdaPoint p) { return std::exp(log_double_power(z, p)); }

inline cplx neg_one_power(LambdaPoint p) { return (p.k % 2 == 0) ? cplx(1.0, 0.0) : cplx(-1.0, 0.0); }
inline double neg_one_power(int k) { return (k % 2 == 0) ? 1.0 : -1.0; }

using LambdaList = std::vector<LambdaPoint>;

inline LambdaList shifted(const LambdaList& list, LambdaPoint h) {
  LambdaList out;
  out.reserve(list.size());
  for (const auto& p : list) out.push_back(p + h);
  return out;
}

// The list with entry j removed.
inline LambdaList without(const LambdaList& list, std::size_t j) {
  LambdaList out;
  out.reserve(list.size());
  for (std::size_t i = 0; i < list.size(); ++i)
    if (i != j) out.push_back(list[i]);
  return out;
}

inline LambdaList concat(const LambdaList& x, const LambdaList& y) {
  LambdaList out = x;
  out.insert(out.end(), y.begin(), y.end());
  return out;
}

namespace detail {

inline double parse_double(std::string_view text) {
  double value = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || text.empty())
    throw Error(ErrorKind::ParseError, "bad number '" + std::string(text) + "'");
  return value;
}

inline int parse_int(std::string_view text) {
  int value = 0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  if (!text.empty() && text.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || first == last)
    throw Error(ErrorKind::ParseError, "bad integer '" + std::string(text) + "'");
  return value;
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

inline double parse_signed(std::string_view text) {
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  if (text == "" || text == "-") return text.empty() ? 1.0 : -1.0;  // bare "i" or "-i"
  return parse_double(text);
}

}  // namespace detail

// "x", "yi", "x+yi" or "x-yi"; exponents like 1e-3 are allowed.
inline cplx parse_complex(std::string_view text) {
  text = detail::trim(text);
  if (text.empty()) throw Error(ErrorKind::ParseError, "empty complex number");
  if (text.back() != 'i') return {detail::parse_double(text.front() == '+' ? text.substr(1) : text), 0.0};
  text.remove_suffix(1);
  std::size_t split = std::string_view::npos;
  for (std::size_t i = text.size(); i-- > 1;) {
    if ((text[i] == '+' || text[i] == '-') && text[i - 1] != 'e' && text[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  if (split == std::string_view::npos) return {0.0, detail::parse_signed(text)};
  const std::string_view re = text.substr(0, split);
  return {detail::parse_double(re.front() == '+' ? re.substr(1) : re), detail::parse_signed(text.substr(split))};
}

// "k:sre:sim", e.g. "0:2.0:0.0".
inline LambdaPoint parse_lambda(std::string_view text) {
  text = detail::trim(text);
  const auto c1 = text.find(':');
  if (c1 == std::string_view::npos) throw Error(ErrorKind::ParseError, "expected k:sre:sim");
  const auto c2 = text.find(':', c1 + 1);
  if (c2 == std::string_view::npos) throw Error(ErrorKind::ParseError, "expected k:sre:sim");
  const int k = detail::parse_int(text.substr(0, c1));
  const double re = detail::parse_double(text.substr(c1 + 1, c2 - c1 - 1));
  const double im = detail::parse_double(text.substr(c2 + 1));
  return {k, cplx(re, im)};
}

// Semicolon-separated list of points; the empty string is the empty list.
inline LambdaList parse_lambda_list(std::string_view text) {
  LambdaList out;
  text = detail::trim(text);
  if (text.empty()) return out;
  while (true) {
    const auto pos = text.find(';');
    out.push_back(parse_lambda(text.substr(0, pos)));
    if (pos == std::string_view::npos) break;
    text.remove_prefix(pos + 1);
  }
  return out;
}

inline std::string format_lambda(LambdaPoint p) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%d:%.17g:%.17g", p.k, p.sigma.real(), p.sigma.imag());
  return buf;
}

inline std::string format_lambda_list(const LambdaList& list) {
  std::string out;
  for (std::size_t i = 0; i < list.size(); ++i) {
    if (i) out += ';';
    out += format_lambda(list[i]);
  }
  return out;
}

}  // namespace hypc
