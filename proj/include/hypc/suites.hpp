#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

#include "hypc/error.hpp"
#include "hypc/identities.hpp"

namespace hypc {

// Every identity check and the suite that exercises it.
struct RegistryEntry {
  std::string_view check;
  std::string_view suite;
};

inline constexpr std::array<RegistryEntry, 30> kRegistry{{
    {"gamma_transposition", "gamma"},
    {"gamma_reflection", "gamma"},
    {"gamma_shift_up", "gamma"},
    {"gamma_shift_down", "gamma"},
    {"gamma_multiplication", "gamma"},
    {"gamma_residue", "gamma"},
    {"gamma_integer_value", "gamma"},
    {"gamma_integer_zero", "gamma"},
    {"gamma_asymptotic_ratio", "asymptotics"},
    {"gamma_asymptotic_slope", "asymptotics"},
    {"closed_form_01", "closed_forms"},
    {"closed_form_11", "closed_forms"},
    {"cross_engine", "engines"},
    {"differential_system", "pde"},
    {"differential_system_order", "pde"},
    {"inversion", "identities"},
    {"conjugation", "identities"},
    {"cancellation", "identities"},
    {"shift", "identities"},
    {"contiguous_a", "identities"},
    {"contiguous_b", "identities"},
    {"contiguous_a_prime", "identities"},
    {"contiguous_b_prime", "identities"},
    {"recombination_aa", "identities"},
    {"recombination_ab", "identities"},
    {"multiplication", "multiplication"},
    {"gauss_euler", "euler"},
    {"vilenkin_kernel", "vilenkin"},
    {"convolution", "convolution"},
    {"mellin", "convolution"},
}};

inline constexpr std::array<std::string_view, 10> kSuiteNames{
    "gamma", "asymptotics", "closed_forms", "engines", "pde", "identities", "multiplication", "euler", "vilenkin", "convolution"};

namespace sampling {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }

 private:
  std::mt19937_64 engine_;
};

struct Box {
  int k_max = 2;
  double re_lo = 0.1;
  double re_hi = 0.9;
  double im_max = 0.3;
};

inline LambdaPoint point(Rng& rng, const Box& box) {
  const int k = rng.integer(-box.k_max, box.k_max);
  const double re = rng.uniform(box.re_lo, box.re_hi);
  const double im = rng.uniform(-box.im_max, box.im_max);
  return {k, cplx(re, im)};
}

inline bool clear_of_poles(LambdaPoint x, double margin) {
  return detail::dist_to_integer(x.a()) >= margin && detail::dist_to_integer(x.a_prime()) >= margin;
}

// No near-resonant pairs within a list and no near-collisions across lists.
inline bool well_separated(const GParams& g, double margin) {
  auto pairwise = [&](const LambdaList& list) {
    for (std::size_t i = 0; i < list.size(); ++i)
      for (std::size_t j = i + 1; j < list.size(); ++j)
        if (detail::dist_to_integer((list[i] - list[j]).a()) < margin) return false;
    return true;
  };
  if (!pairwise(g.a_list()) || !pairwise(g.b_list())) return false;
  for (const auto& a : g.a_list())
    for (const auto& b : g.b_list())
      if (detail::dist_to_integer((a + b).a()) < margin) return false;
  return true;
}

// Log-uniform radius over the union of [lo, hi] bands, uniform angle.
inline cplx z_in_bands(Rng& rng, std::span<const std::pair<double, double>> bands) {
  double total = 0.0;
  for (const auto& [lo, hi] : bands) total += std::log(hi / lo);
  double u = rng.uniform(0.0, total);
  double radius = bands.back().second;
  for (const auto& [lo, hi] : bands) {
    const double w = std::log(hi / lo);
    if (u <= w) {
      radius = lo * std::exp(u);
      break;
    }
    u -= w;
  }
  return std::polar(radius, rng.uniform(-std::numbers::pi, std::numbers::pi));
}

inline constexpr std::array<std::pair<double, double>, 2> kOffCircle{{{0.2, 0.8}, {1.25, 5.0}}};

inline GParams params(Rng& rng, int p, int q, const Box& box, double margin = 0.1) {
  for (;;) {
    LambdaList a, b;
    for (int i = 0; i < q; ++i) a.push_back(point(rng, box));
    for (int i = 0; i < p; ++i) b.push_back(point(rng, box));
    GParams g(a, b);
    if (well_separated(g, margin)) return g;
  }
}

}  // namespace sampling

namespace detail {

using Task = std::function<std::vector<IdentityCheck>()>;

// Failures inside a check become failed records naming the error.
inline std::vector<IdentityCheck> run_guarded(const Task& task, const std::string& label) {
  try {
    return task();
  } catch (const std::exception& e) {
    return {make_check(label, "error", std::numeric_limits<double>::infinity(), 0.0, e.what())};
  }
}

inline std::vector<IdentityCheck> run_tasks(const std::vector<std::pair<std::string, Task>>& tasks, int threads) {
  std::vector<std::vector<IdentityCheck>> results(tasks.size());
  const int workers = std::max(1, std::min<int>(threads, int(tasks.size())));
  if (workers == 1) {
    for (std::size_t i = 0; i < tasks.size(); ++i) results[i] = run_guarded(tasks[i].second, tasks[i].first);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < tasks.size(); i = next++) results[i] = run_guarded(tasks[i].second, tasks[i].first);
      });
  }
  std::vector<IdentityCheck> out;
  for (auto& r : results) out.insert(out.end(), std::make_move_iterator(r.begin()), std::make_move_iterator(r.end()));
  return out;
}

using TaskList = std::vector<std::pair<std::string, Task>>;

inline void add(TaskList& tasks, std::string label, Task task) { tasks.emplace_back(std::move(label), std::move(task)); }

inline LambdaPoint gamma_point(sampling::Rng& rng) {
  for (;;) {
    const int k = rng.integer(-6, 6);
    const cplx s(rng.uniform(-6.0, 6.0), rng.uniform(-6.0, 6.0));
    if (std::abs(s) > 6.0) continue;
    const LambdaPoint x{k, s};
    if (sampling::clear_of_poles(x, 0.05)) return x;
  }
}

inline TaskList gamma_tasks(int samples, std::uint64_t seed, double tol) {
  sampling::Rng rng(seed);
  TaskList tasks;
  for (int i = 0; i < samples; ++i) {
    const LambdaPoint x = gamma_point(rng);
    const int m = rng.integer(0, 4);
    const int mp = rng.integer(0, 4);
    const int order = rng.integer(2, 3);
    LambdaPoint y = x;
    auto mult_clear = [](LambdaPoint c, int n) {
      for (int j = 0; j < n; ++j)
        if (!sampling::clear_of_poles(add_scalar(c, double(j) / n), 0.05)) return false;
      return sampling::clear_of_poles(n * c, 0.05);
    };
    while (!mult_clear(y, order)) y = gamma_point(rng);
    add(tasks, "gamma", [=] {
      return std::vector<IdentityCheck>{check_gamma_transposition(x, tol), check_gamma_reflection(x, tol),
                                        check_gamma_shift_up(x, m, mp, tol), check_gamma_shift_down(x, m, mp, tol),
                                        check_gamma_multiplication(y, order, tol)};
    });
  }
  add(tasks, "gamma_residue", [] {
    std::vector<IdentityCheck> out;
    for (int m = 0; m <= 3; ++m)
      for (int mp = 0; mp <= 3; ++mp) out.push_back(check_gamma_residue(m, mp));
    return out;
  });
  add(tasks, "gamma_integer_value", [] {
    std::vector<IdentityCheck> out;
    for (int m = 1; m <= 10; ++m)
      for (int k = 0; k <= 10; ++k) out.push_back(check_gamma_integer_value(m, k, 1e-12));
    for (int k = 1; k <= 5; ++k)
      for (int l = 1; l <= 5; ++l) out.push_back(check_gamma_integer_zero(k, l));
    return out;
  });
  return tasks;
}

inline TaskList asymptotic_tasks(int samples, std::uint64_t seed) {
  sampling::Rng rng(seed);
  TaskList tasks;
  for (int i = 0; i < samples; ++i) {
    const LambdaPoint base{rng.integer(-1, 1), cplx(rng.uniform(-1.0, 1.0), rng.uniform(-0.5, 0.5))};
    const double angle = rng.uniform(0.2, std::numbers::pi - 0.2);
    add(tasks, "asymptotics", [=] {
      std::vector<IdentityCheck> out;
      for (double modulus : {50.0, 100.0, 500.0}) {
        // 2 Re xi has to be an integer
        const double re = std::round(2.0 * modulus * std::cos(angle)) / 2.0;
        const cplx xi(re, std::sqrt(std::max(modulus * modulus - re * re, 1.0)));
        out.push_back(check_gamma_asymptotic_ratio(base, xi));
      }
      LambdaPoint slope_base = base;
      if (std::abs(slope_base.sigma.real() - 1.0) < 0.5) slope_base.sigma += 1.5;
      out.push_back(check_gamma_asymptotic_slope(slope_base));
      return out;
    });
  }
  return tasks;
}

inline TaskList closed_form_tasks(int samples, std::uint64_t seed, double tol) {
  sampling::Rng rng(seed);
  TaskList tasks;
  for (int i = 0; i < samples; ++i) {
    const LambdaPoint a = sampling::point(rng, {3, 0.05, 0.95, 1.0});
    const cplx z = std::polar(std::exp(rng.uniform(std::log(0.1), std::log(5.0))), rng.uniform(-3.14, 3.14));
    add(tasks, "closed_form_01", [=] { return std::vector<IdentityCheck>{check_closed_form_01(a, z, tol)}; });
  }
  for (int i = 0; i < samples; ++i) {
    const LambdaPoint a = sampling::point(rng, {2, 0.05, 0.95, 0.5});
    const LambdaPoint b = sampling::point(rng, {2, 0.05, 0.95, 0.5});
    cplx z;
    do {
      z = std::polar(std::exp(rng.uniform(std::log(0.1), std::log(5.0))), rng.uniform(-3.14, 3.14));
    } while (std::abs(std::log(std::abs(z))) < 0.05 || std::abs(1.0 + z) < 0.1);
    add(tasks, "closed_form_11", [=] { return std::vector<IdentityCheck>{check_closed_form_11(a, b, z, tol)}; });
  }
  return tasks;
}

inline TaskList engine_tasks(int samples, std::uint64_t seed, double tol) {
  sampling::Rng rng(seed);
  TaskList tasks;
  for (int i = 0; i < samples; ++i) {
    int p, q;
    do {
      p = rng.integer(0, 3);
      q = rng.integer(0, 3);
    } while (p + q == 0);
    GParams g;
    do {
      g = sampling::params(rng, p, q, {2, -0.6, 0.9, 0.5});
    } while (g.upsilon() > p + q - 1.1);
    const cplx z = sampling::z_in_bands(rng, sampling::kOffCircle);
    add(tasks, "cross_engine", [=] { return std::vector<IdentityCheck>{check_cross_engine(g, z, tol)}; });
  }
  return tasks;
}

inline TaskList pde_tasks(int samples, std::uint64_t seed) {
  sampling::Rng rng(seed);
  TaskList tasks;
  constexpr std::array<std::pair<double, double>, 2> bands{{{0.3, 0.7}, {1.4, 3.0}}};
  for (int i = 0; i < samples; ++i) {
    int p, q;
    do {
      p = rng.integer(0, 2);
      q = rng.integer(0, 2);
    } while (std::max(p, q) == 0);
    const GParams g = sampling::params(rng, p, q, {2, 0.1, 0.9, 0.3});
    const cplx z = sampling::z_in_bands(rng, bands);
    add(tasks, "differential_system", [=] {
      return std::vector<IdentityCheck>{check_pde_fd(g, z), check_pde(g, z), check_pde_order(g, z)};
    });
  }
  return tasks;
}

inline TaskList identity_tasks(int samples, std::uint64_t seed, double tol) {
  sampling::Rng rng(seed);
  TaskList tasks;
  const sampling::Box box{2, 0.1, 0.9, 0.3};
  for (int i = 0; i < samples; ++i) {
    const int p = rng.integer(1, 2);
    const int q = rng.integer(1, 2);
    GParams g;
    LambdaPoint c;
    do {
      g = sampling::params(rng, p, q, box);
      c = sampling::point(rng, box);
    } while (!sampling::well_separated(GParams(concat(g.a_list(), {c}), g.b_list()), 0.1) ||
             !sampling::well_separated(GParams(g.a_list(), concat(g.b_list(), {kOne - c})), 0.1));
    const LambdaPoint shift = sampling::point(rng, {1, -0.05, 0.05, 0.2});
    const cplx z = sampling::z_in_bands(rng, sampling::kOffCircle);
    const int ja = rng.integer(0, q - 1);
    const int jb = rng.integer(0, p - 1);
    add(tasks, "identities", [=] {
      std::vector<IdentityCheck> out{check_inversion(g, z, tol),
                                     check_conjugation(g, z, tol),
                                     check_cancellation(g, c, z, tol),
                                     check_shift(g, shift, z, tol),
                                     check_contiguous(g, z, ja, Contiguous::ADiff1),
                                     check_contiguous(g, z, jb, Contiguous::ADiff2),
                                     check_contiguous(g, z, ja, Contiguous::ADiff3),
                                     check_contiguous(g, z, jb, Contiguous::ADiff4),
                                     check_recombination_ab(g, z, ja, jb, tol)};
      if (q >= 2) out.push_back(check_recombination_aa(g, z, 0, 1, tol));
      return out;
    });
  }
  return tasks;
}

inline TaskList multiplication_tasks(int samples, std::uint64_t seed) {
  sampling::Rng rng(seed);
  TaskList tasks;
  for (int i = 0; i < samples; ++i) {
    const int p = rng.integer(0, 1);
    GParams g;
    do {
      g = sampling::params(rng, p, p + 1, {1, 0.1, 0.45, 0.2});
    } while (!sampling::well_separated(replicated(g, 2), 0.05));
    const cplx z = std::polar(rng.uniform(0.4, 2.0), rng.uniform(-3.0, 3.0));
    add(tasks, "multiplication", [=] { return std::vector<IdentityCheck>{check_multiplication(g, 2, z)}; });
  }
  return tasks;
}

inline TaskList euler_tasks(int samples, std::uint64_t seed) {
  sampling::Rng rng(seed);
  TaskList tasks;
  const sampling::Box box{1, 0.3, 0.9, 0.2};
  for (int i = 0; i < samples; ++i) {
    LambdaPoint A, B, C;
    for (;;) {
      A = sampling::point(rng, box);
      B = sampling::point(rng, box);
      C = B + sampling::point(rng, box);
      const GParams rel({LambdaPoint{0, 0.0}, kOne - C}, {A, B});
      if (sampling::well_separated(rel, 0.1)) break;
    }
    add(tasks, "gauss_euler", [=] { return std::vector<IdentityCheck>{check_gauss_euler(A, B, C, 0.4)}; });
  }
  return tasks;
}

inline TaskList vilenkin_tasks(int samples, std::uint64_t seed) {
  sampling::Rng rng(seed);
  TaskList tasks;
  const Matrix2 g{2.0, 1.0, 1.0, 1.0};
  for (int i = 0; i < samples; ++i) {
    LambdaPoint mu, lam, sig;
    for (;;) {
      mu = sampling::point(rng, {1, 0.3, 0.7, 0.2});
      lam = sampling::point(rng, {1, -0.4, 0.4, 0.2});
      sig = lam + sampling::point(rng, {1, 0.3, 0.8, 0.2});
      if ((sig.sigma + mu.sigma).real() >= 1.6 || std::abs(lam.sigma) < 0.1) continue;
      const LambdaPoint C = sig - lam + mu;
      const GParams rel({LambdaPoint{0, 0.0}, kOne - C}, {-lam, mu});
      if (sampling::well_separated(rel, 0.1)) break;
    }
    add(tasks, "vilenkin_kernel", [=] { return std::vector<IdentityCheck>{check_vilenkin(mu, lam, sig, g)}; });
  }
  return tasks;
}

// One 1G1 pair at up to three values of t, and the Mellin pair of one 1G2.
inline TaskList convolution_tasks(int samples) {
  TaskList tasks;
  const GParams g({{0, 0.4}}, {{0, 0.4}});
  const std::array<cplx, 3> ts{cplx(0.5, 0.0), cplx(2.0, 0.0), cplx(-0.3, 0.6)};
  for (int i = 0; i < std::min(samples, 3); ++i) {
    const cplx t = ts[std::size_t(i)];
    add(tasks, "convolution", [=] { return std::vector<IdentityCheck>{check_convolution(g, g, t)}; });
  }
  const GParams h({{0, 1.5}, {1, 1.4}}, {{0, -1.1}});
  const std::array<LambdaPoint, 3> points{LambdaPoint{0, cplx(-1.3, 0.0)}, LambdaPoint{1, cplx(-1.3, 0.3)},
                                          LambdaPoint{-2, cplx(-1.2, -0.5)}};
  for (int i = 0; i < std::min(samples, 3); ++i) {
    const LambdaPoint pt = points[std::size_t(i)];
    add(tasks, "mellin", [=] { return std::vector<IdentityCheck>{check_mellin(h, pt)}; });
  }
  return tasks;
}

}  // namespace detail

// `tol` applies to exact-evaluation checks; checks with their own numerical
// floor (finite differences, plane integrals, asymptotics) keep fixed tolerances.
inline VerificationReport run_suite(std::string_view name, int samples, std::uint64_t seed, double tol, int threads = 1) {
  detail::TaskList tasks;
  if (name == "gamma") tasks = detail::gamma_tasks(samples, seed, tol);
  else if (name == "asymptotics") tasks = detail::asymptotic_tasks(samples, seed);
  else if (name == "closed_forms") tasks = detail::closed_form_tasks(samples, seed, tol);
  else if (name == "engines") tasks = detail::engine_tasks(samples, seed, tol);
  else if (name == "pde") tasks = detail::pde_tasks(samples, seed);
  else if (name == "identities") tasks = detail::identity_tasks(samples, seed, tol);
  else if (name == "multiplication") tasks = detail::multiplication_tasks(samples, seed);
  else if (name == "euler") tasks = detail::euler_tasks(samples, seed);
  else if (name == "vilenkin") tasks = detail::vilenkin_tasks(samples, seed);
  else if (name == "convolution") tasks = detail::convolution_tasks(samples);
  else throw Error(ErrorKind::UnknownSuite, std::string(name));
  VerificationReport report;
  report.suite = std::string(name);
  report.seed = seed;
  report.checks = detail::run_tasks(tasks, threads);
  report.passed = std::all_of(report.checks.begin(), report.checks.end(), [](const IdentityCheck& c) { return c.passed; });
  return report;
}

}  // namespace hypc
