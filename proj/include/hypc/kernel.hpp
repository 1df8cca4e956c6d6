#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include "hypc/error.hpp"
#include "hypc/gamma.hpp"
#include "hypc/lambda.hpp"

namespace hypc {

// Parameters of pG^C_q: the (a|a') list has length q, the (b|b') list length p.
class GParams {
 public:
  GParams() = default;
  GParams(LambdaList a_list, LambdaList b_list) : a_(std::move(a_list)), b_(std::move(b_list)) {
    sigma_sum_ = 0.0;
    for (const auto& x : a_) sigma_sum_ += x.sigma;
    for (const auto& x : b_) sigma_sum_ += x.sigma;
  }

  const LambdaList& a_list() const { return a_; }
  const LambdaList& b_list() const { return b_; }
  int p() const { return int(b_.size()); }
  int q() const { return int(a_.size()); }
  double upsilon() const { return sigma_sum_.real(); }
  // sum of all a+a' and b+b' including imaginary parts
  cplx sigma_sum() const { return sigma_sum_; }

  GParams swapped() const { return GParams(b_, a_); }

  friend bool operator==(const GParams& x, const GParams& y) { return x.a_ == y.a_ && x.b_ == y.b_; }

 private:
  LambdaList a_;
  LambdaList b_;
  cplx sigma_sum_{0.0, 0.0};
};

enum class Convergence { Divergent, Conditional, Absolute };

inline const char* convergence_name(Convergence c) {
  switch (c) {
    case Convergence::Divergent: return "Divergent";
    case Convergence::Conditional: return "Conditional";
    case Convergence::Absolute: return "Absolute";
  }
  return "?";
}

struct ConvergenceReport {
  Convergence kind = Convergence::Divergent;
  // every Re(a+a') > 0 and Re(b+b') > 0, so the imaginary axis separates the poles
  bool positive = false;
};

inline ConvergenceReport classify_convergence(const GParams& g) {
  ConvergenceReport out;
  const double n = g.p() + g.q();
  const double u = g.upsilon();
  out.kind = (u < n - 1.0) ? Convergence::Absolute : (u < n ? Convergence::Conditional : Convergence::Divergent);
  out.positive = true;
  for (const auto& x : g.a_list()) out.positive = out.positive && x.sigma.real() > 0.0;
  for (const auto& x : g.b_list()) out.positive = out.positive && x.sigma.real() > 0.0;
  return out;
}

// log of the kernel at (k, sigma). `zero` is set when a factor vanishes.
struct LogValue {
  cplx log{0.0, 0.0};
  bool zero = false;
};

inline LogValue log_kernel(const GParams& g, int k, cplx sigma) {
  LogValue out;
  const LambdaPoint shift{k, sigma};
  auto add = [&](LambdaPoint p) {
    const LogGammaC f = log_gamma_c(p);
    if (f.pole) throw Error(ErrorKind::PoleAtPoint, "kernel pole at " + format_lambda(shift));
    if (f.zero) out.zero = true;
    out.log += f.log;
  };
  for (const auto& a : g.a_list()) add(a + shift);
  for (const auto& b : g.b_list()) add(b - shift);
  return out;
}

inline cplx kernel_eval(const GParams& g, LambdaPoint point) {
  const LogValue v = log_kernel(g, point.k, point.sigma);
  return v.zero ? cplx(0.0, 0.0) : std::exp(v.log);
}

enum class PoleSide { Left, Right };

struct PolePoint {
  int k = 0;
  cplx sigma{0.0, 0.0};
  PoleSide side = PoleSide::Left;
  int index = 0;  // position in a_list (Left) or b_list (Right)
  int m = 0;
  int m_prime = 0;
};

namespace detail {

// Poles of Gamma^C(x + (k+s)/2 | x' + (-k+s)/2) in s, for fixed k: with
// d = k + k_x the pairs (m, m') satisfy m' - m = d and s = -(m + m') - sigma_x.
// `keep` decides on each candidate; enumeration stops once Re s < floor.
template <class Keep>
void enumerate_factor_poles(LambdaPoint x, int k, double floor, Keep&& keep) {
  const int d = k + x.k;
  for (int mp = std::max(0, d);; ++mp) {
    const int m = mp - d;
    const cplx s = -double(m + mp) - x.sigma;
    if (s.real() < floor) break;
    keep(s, m, mp);
  }
}

}  // namespace detail

inline std::vector<PolePoint> left_poles(const GParams& g, int k, double sigma_window) {
  std::vector<PolePoint> out;
  for (int j = 0; j < g.q(); ++j) {
    detail::enumerate_factor_poles(g.a_list()[j], k, -sigma_window, [&](cplx s, int m, int mp) {
      if (std::abs(s) <= sigma_window) out.push_back({k, s, PoleSide::Left, j, m, mp});
    });
  }
  return out;
}

// Mirror image: the b-factors see (-k, -sigma).
inline std::vector<PolePoint> right_poles(const GParams& g, int k, double sigma_window) {
  std::vector<PolePoint> out;
  for (int j = 0; j < g.p(); ++j) {
    detail::enumerate_factor_poles(g.b_list()[j], -k, -sigma_window, [&](cplx s, int m, int mp) {
      if (std::abs(s) <= sigma_window) out.push_back({k, -s, PoleSide::Right, j, m, mp});
    });
  }
  return out;
}

struct Collision {
  int alpha = 0;  // index into a_list
  int beta = 0;   // index into b_list
  int m = 0;
  int m_prime = 0;
};

// Index pairs whose left and right pole families meet: a+b = -m, a'+b' = -m'.
inline std::vector<Collision> detect_collisions(const GParams& g) {
  std::vector<Collision> out;
  for (int i = 0; i < g.q(); ++i) {
    for (int j = 0; j < g.p(); ++j) {
      const LambdaPoint s = g.a_list()[i] + g.b_list()[j];
      const cplx x = -s.a();
      const cplx xp = -s.a_prime();
      const double m = std::round(x.real());
      const double mp = std::round(xp.real());
      if (m >= 0.0 && mp >= 0.0 && std::abs(x - m) <= kLatticeTol && std::abs(xp - mp) <= kLatticeTol)
        out.push_back({i, j, int(m), int(mp)});
    }
  }
  return out;
}

// A pole cluster that the vertical line leaves on the wrong side. The
// contour goes around it along a circle; side tells which family it belongs to.
struct Detour {
  cplx center{0.0, 0.0};
  double radius = 0.0;
  PoleSide side = PoleSide::Left;
  int multiplicity = 1;
};

struct ContourSpec {
  int k = 0;
  double base_offset = 0.0;  // the vertical line Re sigma = base_offset
  std::vector<Detour> detours;
};

inline constexpr double kDetourCap = 0.25;

namespace detail {

struct PoleCloud {
  std::vector<PolePoint> wrong;   // poles on the wrong side of the line
  std::vector<PolePoint> nearby;  // every pole within reach, for spacing
};

inline PoleCloud poles_around_line(const GParams& g, int k, double offset, bool inclusive, double reach) {
  PoleCloud cloud;
  const double floor_left = offset - reach;
  for (int j = 0; j < g.q(); ++j) {
    enumerate_factor_poles(g.a_list()[j], k, floor_left, [&](cplx s, int m, int mp) {
      const PolePoint pp{k, s, PoleSide::Left, j, m, mp};
      const bool wrong = inclusive ? s.real() >= offset : s.real() > offset;
      if (wrong) cloud.wrong.push_back(pp);
      if (wrong || s.real() >= floor_left) cloud.nearby.push_back(pp);
    });
  }
  for (int j = 0; j < g.p(); ++j) {
    enumerate_factor_poles(g.b_list()[j], -k, -offset - reach, [&](cplx s, int m, int mp) {
      const PolePoint pp{k, -s, PoleSide::Right, j, m, mp};
      const bool wrong = inclusive ? -s.real() <= offset : -s.real() < offset;
      if (wrong) cloud.wrong.push_back(pp);
      cloud.nearby.push_back(pp);
    });
  }
  return cloud;
}

}  // namespace detail

// Vertical line Re sigma = offset plus circular detours around every pole the
// line leaves on the wrong side. With offset 0 this is the contour L_k.
inline ContourSpec separating_contour(const GParams& g, int k, double offset = 0.0, double radius_scale = 1.0) {
  if (!detect_collisions(g).empty()) throw Error(ErrorKind::ParameterCollision, "left and right poles collide");
  ContourSpec spec{k, offset, {}};
  if (offset == 0.0 && classify_convergence(g).positive) return spec;

  const detail::PoleCloud cloud = detail::poles_around_line(g, k, offset, offset == 0.0, 6.0);
  constexpr double kSame = 1e-6;
  std::vector<bool> used(cloud.wrong.size(), false);
  for (std::size_t i = 0; i < cloud.wrong.size(); ++i) {
    if (used[i]) continue;
    Detour d{cloud.wrong[i].sigma, kDetourCap, cloud.wrong[i].side, 0};
    for (std::size_t j = i; j < cloud.wrong.size(); ++j) {
      if (std::abs(cloud.wrong[j].sigma - d.center) <= kSame) {
        if (cloud.wrong[j].side != d.side)
          throw Error(ErrorKind::ParameterCollision, "left and right poles coincide");
        used[j] = true;
        ++d.multiplicity;
      }
    }
    for (const auto& other : cloud.nearby) {
      const double gap = std::abs(other.sigma - d.center);
      if (gap > kSame) d.radius = std::min(d.radius, 0.5 * gap);
    }
    d.radius *= radius_scale;
    spec.detours.push_back(d);
  }
  return spec;
}

}  // namespace hypc
