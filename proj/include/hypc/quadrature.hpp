#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <span>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "hypc/error.hpp"
#include "hypc/kernel.hpp"
#include "hypc/lambda.hpp"
#include "hypc/residue.hpp"
#include "hypc/series.hpp"

namespace hypc {

struct QuadConfig {
  double tol_abs = 1e-8;
  double tol_rel = 1e-6;
  int max_k = 200;
  double line_half_length = 0.0;  // 0: march until the tail is negligible
  int nodes_per_unit = 1;         // Gauss-Kronrod panels per unit of path length
  int detour_nodes = 64;
  double detour_scale = 1.0;      // multiplies every detour radius
};

namespace detail {

struct Piece {
  cplx value{0.0, 0.0};
  double error = 0.0;
  double l1 = 0.0;
  double length = 0.0;
};

inline constexpr double kPanelTol = 1e-10;
inline constexpr double kPanelFloor = 1e-15;
inline constexpr double kMaxPath = 4000.0;

// G7-K15 along p0 -> p1, bisecting until the error is below
// tol_rel * L1 or tol_abs per unit length.
template <class F>
Piece integrate_segment(F&& f, cplx p0, cplx p1, double tol_rel = kPanelTol, double tol_abs = kPanelFloor,
                        int depth = 12) {
  const cplx d = p1 - p0;
  double err = 0.0;
  double l1 = 0.0;
  auto along = [&](double u) { return f(p0 + u * d); };
  const cplx v = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(along, 0.0, 1.0, 0, 0.0, &err, &l1);
  const double len = std::abs(d);
  Piece out{v * d, err * len, l1 * len};
  if (depth == 0 || out.error <= std::max(tol_rel * out.l1, tol_abs * len)) return out;
  const cplx mid = 0.5 * (p0 + p1);
  const Piece left = integrate_segment(f, p0, mid, tol_rel, tol_abs, depth - 1);
  const Piece right = integrate_segment(f, mid, p1, tol_rel, tol_abs, depth - 1);
  return {left.value + right.value, left.error + right.error, left.l1 + right.l1};
}

// March panels from `start` along the unit direction `dir` until three
// consecutive panels carry less than `stop_abs`.
template <class F>
Piece integrate_ray(F&& f, cplx start, cplx dir, double stop_abs, const QuadConfig& cfg) {
  const double max_len = cfg.line_half_length > 0.0 ? cfg.line_half_length : kMaxPath;
  const double unit = 1.0 / double(std::max(1, cfg.nodes_per_unit));
  Piece total;
  double pos = 0.0;
  int quiet = 0;
  for (int n = 0;; ++n) {
    const double len = unit * std::min(4.0, 1.0 + 0.125 * n);
    const Piece piece = integrate_segment(f, start + pos * dir, start + (pos + len) * dir, kPanelTol, stop_abs);
    pos += len;
    total.value += piece.value;
    total.error += piece.error;
    total.l1 += piece.l1;
    total.length = pos;
    quiet = (piece.l1 <= stop_abs) ? quiet + 1 : 0;
    if (quiet >= 3 && n >= 3) break;
    if (pos >= max_len) {
      if (cfg.line_half_length > 0.0) {
        total.error += 3.0 * piece.l1;
        break;
      }
      throw Error(ErrorKind::QuadratureBudgetExceeded, "contour tail did not decay within the path budget");
    }
  }
  return total;
}

// Counterclockwise circle by the trapezoid rule.
template <class F>
cplx integrate_circle(F&& f, cplx center, double radius, int nodes) {
  cplx sum = 0.0;
  for (int n = 0; n < nodes; ++n) {
    const cplx e = std::polar(1.0, 2.0 * std::numbers::pi * n / nodes);
    sum += f(center + radius * e) * e;
  }
  return sum * cplx(0.0, radius * 2.0 * std::numbers::pi / nodes);
}

// Offset of the vertical line in [-0.5, 0.5] that stays farthest from the given real parts.
inline double farthest_offset(std::span<const double> pole_re) {
  double best = 0.0;
  double best_gap = -1.0;
  for (int i = 0; i <= 100; ++i) {
    const double c = -0.5 + 0.01 * i;
    double gap = 1e300;
    for (double x : pole_re) gap = std::min(gap, std::abs(x - c));
    if (gap > best_gap + 1e-12 || (std::abs(gap - best_gap) <= 1e-12 && std::abs(c) < std::abs(best))) {
      best_gap = gap;
      best = c;
    }
  }
  return best;
}

inline double max_abs_imag_sigma(const GParams& g) {
  double m = 0.0;
  for (const auto& x : g.a_list()) m = std::max(m, std::abs(x.sigma.imag()));
  for (const auto& x : g.b_list()) m = std::max(m, std::abs(x.sigma.imag()));
  return m;
}

// Integrand of the k-th summand, evaluated through logarithms.
struct SummandIntegrand {
  const GParams& params;
  cplx z;
  int k;
  long* evaluations;

  cplx operator()(cplx sigma) const {
    ++*evaluations;
    const LogValue v = log_kernel(params, k, sigma);
    if (v.zero) return 0.0;
    const cplx l = v.log + log_double_power(z, LambdaPoint{-k, -sigma});
    if (l.real() < -745.0) return 0.0;
    return std::exp(l);
  }
};

inline cplx detour_sum(const ContourSpec& spec, const SummandIntegrand& f, int nodes) {
  cplx out = 0.0;
  for (const Detour& d : spec.detours) {
    const cplx loop = integrate_circle(f, d.center, d.radius, nodes);
    out += (d.side == PoleSide::Left) ? loop : -loop;
  }
  return out;
}

// Per-k vertical segment bent into two 45-degree rays that head into the
// half-plane where the summand decays; wrong-side poles get full circles.
inline EvalResult quad_lines(const GParams& g, cplx z, const QuadConfig& cfg) {
  const int p = g.p();
  const int q = g.q();
  const double toward = (q > p) ? -1.0 : (q < p ? 1.0 : (std::abs(z) < 1.0 ? -1.0 : 1.0));
  const double t0 = 1.0 + max_abs_imag_sigma(g);
  const cplx up_dir = cplx(toward, 1.0) / std::sqrt(2.0);
  const cplx down_dir = cplx(toward, -1.0) / std::sqrt(2.0);
  int k_floor = 3;
  for (const auto& x : g.a_list()) k_floor = std::max(k_floor, std::abs(x.k) + 3);
  for (const auto& x : g.b_list()) k_floor = std::max(k_floor, std::abs(x.k) + 3);

  EvalResult out;
  out.engine = Engine::Quadrature;
  out.diagnostics.branch = "quad_lines";
  out.diagnostics.convergence = classify_convergence(g).kind;
  long evals = 0;
  KahanSum total;
  double err = 0.0;
  const double stop_abs = 1e-4 * cfg.tol_abs;

  auto summand = [&](int k) {
    std::vector<double> re;
    for (const auto& pp : left_poles(g, k, t0 + 3.0)) re.push_back(pp.sigma.real());
    for (const auto& pp : right_poles(g, k, t0 + 3.0)) re.push_back(pp.sigma.real());
    const double c = farthest_offset(re);
    const ContourSpec spec = separating_contour(g, k, c, cfg.detour_scale);
    const SummandIntegrand f{g, z, k, &evals};
    const cplx lo(c, -t0);
    const cplx hi(c, t0);
    Piece acc = integrate_segment(f, lo, hi);
    const Piece up = integrate_ray(f, hi, up_dir, stop_abs, cfg);
    const Piece down = integrate_ray(f, lo, down_dir, stop_abs, cfg);
    acc.value += up.value - down.value + detour_sum(spec, f, cfg.detour_nodes);
    acc.error += up.error + down.error;
    return Piece{acc.value / cplx(0.0, 2.0 * std::numbers::pi), acc.error / (2.0 * std::numbers::pi), 0.0};
  };

  const Piece first = summand(0);
  total += first.value;
  err += first.error;
  for (int sign : {1, -1}) {
    int quiet = 0;
    double tail = 0.0;
    int k = sign;
    for (;; k += sign) {
      if (std::abs(k) > cfg.max_k)
        throw Error(ErrorKind::QuadratureBudgetExceeded, "k-sum not converged within max_k");
      const Piece s = summand(k);
      total += s.value;
      err += s.error;
      const double size = std::abs(s.value) + s.error;
      const double thresh = 1e-3 * std::max(cfg.tol_abs, cfg.tol_rel * std::abs(total.sum));
      if (size <= thresh) {
        ++quiet;
        tail = std::max(tail, size);
      } else {
        quiet = 0;
        tail = 0.0;
      }
      if (quiet >= 3 && std::abs(k) >= k_floor) break;
    }
    err += 3.0 * tail;
    if (sign > 0) out.diagnostics.k_max = k;
    else out.diagnostics.k_min = k;
  }
  out.value = total.sum;
  out.abs_error_estimate = err;
  out.diagnostics.evaluations = evals;
  return out;
}

// Sum_{k >= start} w^k f(k) for a slowly varying f by the Euler-Boole
// expansion in forward differences. Returns the value and the last term used.
inline std::pair<cplx, double> euler_boole_tail(std::span<const cplx> samples, cplx w, int start) {
  std::vector<cplx> diff(samples.begin(), samples.end());
  const cplx one_minus = 1.0 - w;
  cplx factor = std::pow(w, start) / one_minus;
  cplx sum = 0.0;
  double prev = 1e300;
  double last = 0.0;
  const double eps = std::numeric_limits<double>::epsilon();
  double scale = 0.0;
  for (const cplx& v : samples) scale = std::max(scale, std::abs(v));
  for (std::size_t j = 0; j < samples.size(); ++j) {
    const cplx term = factor * diff[0];
    const double roundoff = std::pow(2.0, double(j)) * eps * scale * std::abs(factor);
    if (std::abs(term) > prev || std::abs(term) < roundoff) break;
    sum += term;
    prev = std::abs(term);
    last = std::max(std::abs(term), roundoff);
    for (std::size_t i = 0; i + 1 < diff.size() - j; ++i) diff[i] = diff[i + 1] - diff[i];
    factor *= w / one_minus;
  }
  return {sum, last};
}

// Distance of x to the nearest multiple of 2 pi.
inline double circle_gap(double x) {
  const double t = std::remainder(x, 2.0 * std::numbers::pi);
  return std::abs(t);
}

// p = q near the unit circle: integrate in sigma along one vertical line with
// the k-sum inside. After the sign (-1)^{pk} the kernel is smooth in k, so the
// sum is a power series in w = (-1)^p e^{-i arg z} whose tails are summed with
// forward differences. The k-summed integrand decays like exp(-gap |Im sigma|).
inline EvalResult quad_kernel_sum(const GParams& g, cplx z, const QuadConfig& cfg) {
  const int p = g.p();
  const double theta = principal_arg(z);
  const double log_r = std::log(std::abs(z));
  const cplx w = neg_one_power(p) * std::polar(1.0, -theta);
  const double one_minus = std::abs(1.0 - w);
  const int n_direct = std::max(30, int(std::ceil(100.0 / one_minus)));
  constexpr int kTailSamples = 16;

  std::vector<double> re;
  for (const auto& a : g.a_list())
    for (int n = 0; n <= 3 + int(std::max(0.0, -a.sigma.real())); ++n) re.push_back(-a.sigma.real() - n);
  for (const auto& b : g.b_list())
    for (int n = 0; n <= 3 + int(std::max(0.0, -b.sigma.real())); ++n) re.push_back(b.sigma.real() + n);
  const double c = farthest_offset(re);

  long evals = 0;
  double tail_err = 0.0;
  auto smooth_part = [&](int k, cplx sigma) -> cplx {
    ++evals;
    const LogValue v = log_kernel(g, k, sigma);
    if (v.zero) return 0.0;
    return neg_one_power(p * k) * std::exp(v.log - sigma * log_r);
  };
  std::vector<cplx> head(kTailSamples);
  auto kernel_sum = [&](cplx sigma) -> cplx {
    KahanSum s;
    cplx wk = std::pow(w, -n_direct);
    for (int k = -n_direct; k <= n_direct; ++k, wk *= w) s += wk * smooth_part(k, sigma);
    for (int sign : {1, -1}) {
      for (int j = 0; j < kTailSamples; ++j) head[j] = smooth_part(sign * (n_direct + 1 + j), sigma);
      const auto [value, last] = euler_boole_tail(head, sign > 0 ? w : 1.0 / w, n_direct + 1);
      s += value;
      tail_err = std::max(tail_err, last);
    }
    return s.sum;
  };

  const double stop_abs = 1e-4 * cfg.tol_abs;
  const Piece upper = integrate_ray(kernel_sum, cplx(c, 0.0), cplx(0.0, 1.0), stop_abs, cfg);
  const Piece lower = integrate_ray(kernel_sum, cplx(c, 0.0), cplx(0.0, -1.0), stop_abs, cfg);
  const cplx line = (upper.value - lower.value) / cplx(0.0, 2.0 * std::numbers::pi);
  const double err = (upper.error + lower.error + tail_err * (upper.length + lower.length)) / (2.0 * std::numbers::pi);

  // finitely many k leave a pole on the wrong side of Re sigma = c
  int k_reach = 2;
  for (const auto& a : g.a_list()) k_reach = std::max(k_reach, std::abs(a.k) + 2 + int(std::max(0.0, -c - a.sigma.real())));
  for (const auto& b : g.b_list()) k_reach = std::max(k_reach, std::abs(b.k) + 2 + int(std::max(0.0, c - b.sigma.real())));
  cplx corrections = 0.0;
  for (int k = -k_reach; k <= k_reach; ++k) {
    const ContourSpec spec = separating_contour(g, k, c, cfg.detour_scale);
    if (spec.detours.empty()) continue;
    const SummandIntegrand f{g, z, k, &evals};
    corrections += detour_sum(spec, f, cfg.detour_nodes);
  }

  EvalResult out;
  out.engine = Engine::Quadrature;
  out.diagnostics.branch = "quad_kernel_sum";
  out.diagnostics.convergence = classify_convergence(g).kind;
  out.diagnostics.k_min = -n_direct - kTailSamples;
  out.diagnostics.k_max = n_direct + kTailSamples;
  out.value = line + corrections / cplx(0.0, 2.0 * std::numbers::pi);
  out.abs_error_estimate = err;
  out.diagnostics.evaluations = evals;
  return out;
}

}  // namespace detail

inline constexpr double kQuadMargin = 0.05;

// Direct evaluation of the defining sum of contour integrals.
inline EvalResult g_eval_quad(const GParams& g, cplx z, const QuadConfig& cfg = {}) {
  if (z == cplx(0.0, 0.0)) throw Error(ErrorKind::ZeroBase, "z = 0");
  const double margin = double(g.p() + g.q()) - 1.0 - g.upsilon();
  if (margin < kQuadMargin)
    throw Error(ErrorKind::NotAbsolutelyConvergent, "upsilon exceeds p + q - 1 - 0.05");
  if (!detect_collisions(g).empty()) throw Error(ErrorKind::ParameterCollision, "left and right poles collide");
  if (g.p() != g.q()) return detail::quad_lines(g, z, cfg);

  const double log_r = std::abs(std::log(std::abs(z)));
  const double gap = detail::circle_gap(g.p() * std::numbers::pi - principal_arg(z));
  if (log_r < 0.2 && gap >= 0.2) return detail::quad_kernel_sum(g, z, cfg);
  if (log_r < 1e-2 && margin < 1.05)
    throw Error(ErrorKind::OscillationTooSlow, "|z| too close to 1 near the singular direction");
  return detail::quad_lines(g, z, cfg);
}

enum class EngineChoice { Auto, Series, Quad };

struct EvalOptions {
  EngineChoice engine = EngineChoice::Auto;
  SeriesConfig series;
  QuadConfig quad;
};

// Series first; the quadrature engine takes over where the residue sums refuse.
inline EvalResult g_eval(const GParams& g, cplx z, const EvalOptions& opt = {}) {
  switch (opt.engine) {
    case EngineChoice::Series: return g_eval_series(g, z, opt.series);
    case EngineChoice::Quad: return g_eval_quad(g, z, opt.quad);
    case EngineChoice::Auto: break;
  }
  try {
    return g_eval_series(g, z, opt.series);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::ResonantParameters && e.kind() != ErrorKind::OnUnitCircle) throw;
  }
  return g_eval_quad(g, z, opt.quad);
}

// ---- integrals over the plane ----

struct PlaneGrid {
  double x_min = -60.0;   // log radius range around each center
  double x_max = 40.0;
  double panel = 0.5;     // Gauss-Legendre panel width in log radius
  int angular = 256;
  double stop_rel = 1e-13;  // a panel below this fraction of the running mass ends the march
};

struct PlaneResult {
  cplx value{0.0, 0.0};
  double abs_error_estimate = 0.0;
};

// Integral of f over C with dA = dRe dIm. The plane is split by the partition
// of unity d_i^-4 / sum_j d_j^-4 over the centers; each piece is integrated in
// polar coordinates around its center. f receives (center index, offset) so
// that singular factors can be formed from the exact offset.
template <class F>
PlaneResult integrate_plane(std::span<const cplx> centers, F&& f, const PlaneGrid& grid = {}) {
  const int n_angle = std::max(8, grid.angular + (grid.angular & 1));
  std::vector<cplx> unit(n_angle);
  for (int j = 0; j < n_angle; ++j) unit[j] = std::polar(1.0, 2.0 * std::numbers::pi * j / n_angle);
  const double dphi = 2.0 * std::numbers::pi / n_angle;

  PlaneResult out;
  for (std::size_t i = 0; i < centers.size(); ++i) {
    double coarse_err = 0.0;
    auto ring = [&](double x) -> cplx {
      const double rho = std::exp(x);
      cplx fine = 0.0, coarse = 0.0;
      for (int j = 0; j < n_angle; ++j) {
        const cplx delta = rho * unit[j];
        const cplx t = centers[i] + delta;
        double others = 0.0;
        for (std::size_t m = 0; m < centers.size(); ++m) {
          if (m == i) continue;
          const double ratio = rho / std::abs(t - centers[m]);
          others += ratio * ratio * ratio * ratio;
        }
        const cplx v = f(i, delta) / (1.0 + others);
        fine += v;
        if (j % 2 == 0) coarse += v;
      }
      fine *= dphi * rho * rho;
      coarse *= 2.0 * dphi * rho * rho;
      coarse_err = std::max(coarse_err, std::abs(fine - coarse));
      return fine;
    };
    cplx total = 0.0;
    double mass = 0.0;
    double err = 0.0;
    for (int dir : {1, -1}) {
      int quiet = 0;
      for (double x = 0.0; dir > 0 ? x < grid.x_max : x > grid.x_min; x += dir * grid.panel) {
        coarse_err = 0.0;
        const double lo = std::min(x, x + dir * grid.panel);
        const cplx v = boost::math::quadrature::gauss<double, 20>::integrate(ring, lo, lo + grid.panel);
        total += v;
        mass += std::abs(v);
        err += coarse_err * grid.panel;
        quiet = (std::abs(v) <= grid.stop_rel * mass) ? quiet + 1 : 0;
        if (quiet >= 4) break;
      }
    }
    out.value += total;
    out.abs_error_estimate += err;
  }
  return out;
}

// (1/2 pi) integral of t^{point} f(t) dA / |t|^2 in log-polar coordinates.
template <class F>
cplx mellin_forward(F&& f, LambdaPoint point, const QuadConfig& cfg = {}, PlaneGrid grid = {}) {
  grid.angular = std::max(grid.angular, 8 * (std::abs(point.k) + 4));
  const cplx origin[] = {cplx(0.0, 0.0)};
  auto integrand = [&](std::size_t, cplx t) { return double_power(t, point) * f(t) / std::norm(t); };
  const PlaneResult r = integrate_plane(std::span<const cplx>(origin), integrand, grid);
  if (!std::isfinite(r.value.real()) || !std::isfinite(r.value.imag()) ||
      r.abs_error_estimate > 1e3 * std::max(cfg.tol_abs, cfg.tol_rel * std::abs(r.value)))
    throw Error(ErrorKind::QuadratureBudgetExceeded, "angular resolution insufficient for the Mellin integral");
  return r.value / (2.0 * std::numbers::pi);
}

// G value for use inside plane integrals: the residue sums with a generous
// term budget, linear in log|z| across the unit-circle band.
inline cplx g_value_for_integrand(const GParams& g, cplx z) {
  static const SeriesConfig cfg{1e-16, 0.0, 400000};
  try {
    return g_eval_series(g, z, cfg).value;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::OnUnitCircle) throw;
  }
  const cplx dir = z / std::abs(z);
  const double lo = std::log1p(-1.5 * kCircleDelta);
  const double hi = std::log1p(1.5 * kCircleDelta);
  const cplx v_lo = g_eval_series(g, std::exp(lo) * dir, cfg).value;
  const cplx v_hi = g_eval_series(g, std::exp(hi) * dir, cfg).value;
  const double s = (std::log(std::abs(z)) - lo) / (hi - lo);
  return v_lo + s * (v_hi - v_lo);
}

// Points where a G-function is singular in z besides 0 and infinity.
inline std::vector<cplx> singular_points(const GParams& g) {
  if (g.p() == g.q()) return {cplx(neg_one_power(g.p()), 0.0)};
  return {};
}

struct ConvolutionResult {
  cplx value{0.0, 0.0};
  double abs_error_estimate = 0.0;
};

// (1/2 pi) integral of g1(z) g2(t/z) dA / |z|^2.
inline ConvolutionResult convolve_g(const GParams& g1, const GParams& g2, cplx t, const PlaneGrid& grid = {}) {
  if (t == cplx(0.0, 0.0)) throw Error(ErrorKind::ZeroBase, "t = 0");
  for (const GParams* g : {&g1, &g2})
    if (g->upsilon() >= double(g->p() + g->q()) - 1.0)
      throw Error(ErrorKind::NotL2, "upsilon must stay below p + q - 1");
  std::vector<cplx> centers{cplx(0.0, 0.0)};
  for (cplx s : singular_points(g1)) centers.push_back(s);
  for (cplx s : singular_points(g2)) {
    const cplx c = t / s;
    if (std::none_of(centers.begin(), centers.end(), [&](cplx x) { return std::abs(x - c) < 1e-12; }))
      centers.push_back(c);
  }
  auto f = [&](std::size_t i, cplx delta) -> cplx {
    const cplx z = centers[i] + delta;
    return g_value_for_integrand(g1, z) * g_value_for_integrand(g2, t / z) / std::norm(z);
  };
  const PlaneResult r = integrate_plane(std::span<const cplx>(centers), f, grid);
  if (!std::isfinite(r.value.real()) || !std::isfinite(r.value.imag()))
    throw Error(ErrorKind::QuadratureBudgetExceeded, "convolution integral produced a non-finite value");
  return {r.value / (2.0 * std::numbers::pi), r.abs_error_estimate / (2.0 * std::numbers::pi)};
}

}  // namespace hypc
