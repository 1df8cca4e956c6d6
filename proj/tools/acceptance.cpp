// Acceptance run: one PASS/FAIL line per criterion. Exit status is 0 when every
// failing criterion is on the known-conflict list (README, "Known deviations").

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "hypc/suites.hpp"

namespace {

using hypc::IdentityCheck;

// tolerances and sample counts, pinned
constexpr int kGammaSamples = 200;
constexpr double kGammaTol = 1e-11;
constexpr double kIntegerTableTol = 1e-12;
constexpr int kAsymptoticSamples = 10;
constexpr int kClosedFormSamples = 50;
constexpr double kClosedFormTol = 1e-9;
constexpr int kEngineSamples = 100;
constexpr double kEngineTol = 1e-5;
constexpr int kPdeSamples = 20;
constexpr int kIdentitySamples = 50;
constexpr double kIdentityTol = 1e-8;
constexpr int kConvolutionSamples = 3;
constexpr int kEulerSamples = 5;
constexpr int kVilenkinSamples = 3;
constexpr int kMultiplicationSamples = 5;

// Criterion 1 includes an integer table with a factor (-1)^k that
// Gamma(a)/Gamma(1-a') does not have.
const std::set<int> kDocumentedConflicts{1};

struct Outcome {
  bool passed = true;
  int checks = 0;
  int failures = 0;
  double worst_ratio = 0.0;
  std::string worst_name;
  std::string first_failure;
  std::string note;

  void add(const IdentityCheck& c) {
    ++checks;
    const double ratio = c.tolerance > 0.0 ? c.residual / c.tolerance : (c.residual == 0.0 ? 0.0 : INFINITY);
    if (!(ratio <= worst_ratio)) {
      worst_ratio = ratio;
      worst_name = c.name;
    }
    if (!c.passed) {
      passed = false;
      ++failures;
      if (first_failure.empty()) first_failure = c.name + " [" + c.witness + "]";
    }
  }
  void add(const hypc::VerificationReport& r) {
    for (const auto& c : r.checks) add(c);
  }
};

int thread_cap() {
  const char* env = std::getenv("HYPC_THREADS");
  return env ? std::max(1, std::atoi(env)) : 1;
}

hypc::VerificationReport suite(std::string_view name, int samples, std::uint64_t seed, double tol) {
  return hypc::run_suite(name, samples, seed, tol, thread_cap());
}

// The signed table: Gamma_c(m | -k) = (m-1)! (-1)^k / k!, Gamma_c(k | l) = 0.
Outcome signed_integer_table() {
  Outcome out;
  for (int m = 1; m <= 10; ++m)
    for (int k = 0; k <= 10; ++k) {
      const hypc::cplx got = hypc::gamma_c_value(hypc::integer_point(m, -k));
      const double want = std::tgamma(m) * hypc::neg_one_power(k) / std::tgamma(k + 1.0);
      const double res = std::abs(got - want) / std::abs(want);
      out.add(hypc::make_check("signed_integer_table", "gamma", res, kIntegerTableTol,
                               "m=" + std::to_string(m) + " k=" + std::to_string(k)));
    }
  for (int k = 1; k <= 10; ++k)
    for (int l = 1; l <= 10; ++l) out.add(hypc::check_gamma_integer_zero(k, l));
  return out;
}

struct Criterion {
  int id;
  const char* title;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "gamma_c identities (200 points, 1e-11) and signed integer table (1e-12)",
       [] {
         Outcome o;
         o.add(suite("gamma", kGammaSamples, 42, kGammaTol));
         o.note = "identity suite " + std::string(o.passed ? "passes" : "fails") + " (" + std::to_string(o.checks - o.failures) +
                  "/" + std::to_string(o.checks) + ")";
         const Outcome table = signed_integer_table();
         o.note += ", signed table " + std::to_string(table.checks - table.failures) + "/" + std::to_string(table.checks);
         o.checks += table.checks;
         o.failures += table.failures;
         if (!table.passed) {
           o.passed = false;
           if (o.first_failure.empty()) o.first_failure = table.first_failure;
         }
         if (!(table.worst_ratio <= o.worst_ratio)) {
           o.worst_ratio = table.worst_ratio;
           o.worst_name = table.worst_name;
         }
         return o;
       }},
      {2, "asymptotic ratio within 2/|xi|, log-log slope within 2%",
       [] {
         Outcome o;
         o.add(suite("asymptotics", kAsymptoticSamples, 42, 0.0));
         return o;
       }},
      {3, "0G1 and 1G1 closed forms, 50 samples each, 1e-9",
       [] {
         Outcome o;
         o.add(suite("closed_forms", kClosedFormSamples, 42, kClosedFormTol));
         return o;
       }},
      {4, "series vs quadrature, 100 samples, 1e-5 (1 + |G|)",
       [] {
         Outcome o;
         o.add(suite("engines", kEngineSamples, 7, kEngineTol));
         return o;
       }},
      {5, "differential system, FD residual 1e-4 at h = 1e-3, ratio at h/2 in [3, 5]",
       [] {
         Outcome o;
         o.add(suite("pde", kPdeSamples, 42, 0.0));
         return o;
       }},
      {6, "parameter identities, 1e-8 exact and 1e-5 finite-difference",
       [] {
         Outcome o;
         o.add(suite("identities", kIdentitySamples, 5, kIdentityTol));
         return o;
       }},
      {7, "1G1 * 1G1 = 2G2 at 3 values of t, Mellin pair at 3 points, 1e-3",
       [] {
         Outcome o;
         o.add(suite("convolution", kConvolutionSamples, 42, 0.0));
         return o;
       }},
      {8, "Euler integral vs 2G2 at z = 0.4, 5 draws, 1e-3",
       [] {
         Outcome o;
         o.add(suite("euler", kEulerSamples, 42, 0.0));
         return o;
       }},
      {9, "SL(2,C) kernel closed form vs plane integral, 3 draws, 1e-3",
       [] {
         Outcome o;
         o.add(suite("vilenkin", kVilenkinSamples, 42, 0.0));
         return o;
       }},
      {10, "multiplication formula, m = 2, constant stable across z to 1e-6",
       [] {
         Outcome o;
         o.add(suite("multiplication", kMultiplicationSamples, 42, 0.0));
         return o;
       }},
  };

  bool undocumented_failure = false;
  const auto start = std::chrono::steady_clock::now();
  for (const Criterion& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.passed = false;
      o.first_failure = e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool documented = kDocumentedConflicts.count(c.id) > 0;
    std::printf("%s criterion %2d: %s | checks=%d failures=%d worst residual/tol=%.3g (%s) %.1fs", o.passed ? "PASS" : "FAIL",
                c.id, c.title, o.checks, o.failures, o.worst_ratio, o.worst_name.c_str(), secs);
    if (!o.note.empty()) std::printf(" | %s", o.note.c_str());
    if (!o.passed) {
      std::printf(" | first failure: %s%s", o.first_failure.c_str(), documented ? " | documented conflict" : "");
      undocumented_failure = undocumented_failure || !documented;
    }
    std::printf("\n");
    std::fflush(stdout);
  }
  const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("total %.1fs, %s\n", total, undocumented_failure ? "undocumented failures" : "all failures documented");
  return undocumented_failure ? 1 : 0;
}
