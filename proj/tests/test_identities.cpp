#include <gtest/gtest.h>

#include <set>

#include "hypc/suites.hpp"

using namespace hypc;

namespace {

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::Indeterminate;
}

const GParams kTwoOne({{0, 0.6}, {1, cplx(0.5, 0.2)}}, {{0, 0.3}});
const GParams kTwoTwo({{0, 0.2}, {-1, 0.3}}, {{1, cplx(0.5, 0.1)}, {0, 0.45}});

}  // namespace

TEST(Identities, ParameterSymmetries) {
  EXPECT_TRUE(check_inversion(kTwoOne, cplx(0.7, 0.2), 1e-9).passed);
  EXPECT_TRUE(check_conjugation(kTwoTwo, cplx(0.3, -0.4), 1e-9).passed);
  EXPECT_TRUE(check_shift(kTwoOne, {1, cplx(0.02, 0.1)}, cplx(0.7, 0.2), 1e-9).passed);
  EXPECT_TRUE(check_shift(kTwoOne, {0, 0.0}, cplx(0.7, 0.2), 0.0).passed);
}

TEST(Identities, Cancellation) {
  const GParams g({{0, 0.6}}, {{1, 0.3}});
  EXPECT_TRUE(check_cancellation(g, {1, cplx(0.2, 0.1)}, cplx(0.4, 0.3), 1e-8).passed);
  // c = 1 - c
  EXPECT_TRUE(check_cancellation(g, {0, 1.0}, cplx(0.4, 0.3), 1e-8).passed);
  // c meets the existing b-parameter
  EXPECT_EQ(kind_of([&] { check_cancellation(g, {-1, -0.3}, cplx(0.4, 0.3), 1e-8); }), ErrorKind::ParameterCollision);
}

TEST(Identities, ContiguousRelations) {
  const cplx z(0.5, 0.3);
  for (Contiguous w : {Contiguous::ADiff1, Contiguous::ADiff3}) {
    EXPECT_TRUE(check_contiguous(kTwoOne, z, 0, w).passed) << contiguous_name(w);
    EXPECT_TRUE(check_contiguous(kTwoOne, z, 1, w).passed) << contiguous_name(w);
  }
  for (Contiguous w : {Contiguous::ADiff2, Contiguous::ADiff4})
    EXPECT_TRUE(check_contiguous(kTwoOne, z, 0, w).passed) << contiguous_name(w);
  EXPECT_TRUE(check_recombination_aa(kTwoOne, z, 0, 1, 1e-9).passed);
  EXPECT_TRUE(check_recombination_ab(kTwoOne, z, 1, 0, 1e-9).passed);
}

TEST(Identities, DifferentialSystem) {
  const cplx z(0.4, 0.3);
  EXPECT_TRUE(check_pde(kTwoTwo, z).passed);
  EXPECT_TRUE(check_pde_fd(kTwoOne, z).passed);
  const IdentityCheck order = check_pde_order(kTwoOne, z);
  EXPECT_TRUE(order.passed) << order.witness;
  EXPECT_LT(order.residual, 0.1);
}

TEST(Identities, Multiplication) {
  const GParams g({{0, 0.3}, {1, cplx(0.2, 0.1)}}, {{0, 0.25}});
  const std::vector<cplx> zs{cplx(0.4, 0.2), cplx(-0.3, 0.5), cplx(0.6, -0.1)};
  const MultiplicationFit fit = fit_multiplication(g, 2, zs);
  EXPECT_LT(fit.spread, 1e-9);
  EXPECT_LT(std::abs(fit.mean - fit.predicted) / std::abs(fit.predicted), 1e-9);
  EXPECT_TRUE(check_multiplication(g, 2, cplx(0.4, 0.2)).passed);
  EXPECT_THROW(check_multiplication(g, 2, std::span<const cplx>{}), Error);
}

TEST(Identities, GaussEuler) {
  EXPECT_TRUE(check_gauss_euler({0, 0.6}, {1, 0.7}, {0, 2.4}, 0.4).passed);
}

TEST(Identities, VilenkinKernel) {
  const Matrix2 g{2.0, 1.0, 1.0, 1.0};
  EXPECT_TRUE(check_vilenkin({0, 0.8}, {1, cplx(-0.3, 0.1)}, {0, 0.7}, g).passed);
  // lambda = 0 drops the hypergeometric factor
  const LambdaPoint mu{0, 0.8}, sig{0, 0.7}, zero{0, 0.0};
  const cplx expected = std::exp(log_double_power(2.0, sig + mu - kOne) + log_double_power(1.0, -mu)) * std::numbers::pi *
                        beta_c(mu, sig).value;
  EXPECT_LE(std::abs(vilenkin_kernel(mu, zero, sig, g) - expected), 1e-13 * std::abs(expected));
  EXPECT_EQ(kind_of([&] { vilenkin_kernel(mu, zero, sig, Matrix2{2.0, 1.0, 1.0, 2.0}); }), ErrorKind::NonUnimodular);
  EXPECT_EQ(kind_of([&] { vilenkin_kernel(mu, zero, sig, Matrix2{1.0, 0.0, 1.0, 1.0}); }), ErrorKind::DegenerateMatrix);
}

TEST(Identities, MellinPairWithTailCorrection) {
  const GParams h({{0, 1.5}, {1, 1.4}}, {{0, -1.1}});
  const IdentityCheck c = check_mellin(h, {0, cplx(-1.3, 0.0)});
  EXPECT_TRUE(c.passed) << c.residual;
  EXPECT_THROW(mellin_of_g(kTwoTwo, {0, 0.0}), Error);
}

TEST(Suites, UnknownName) {
  EXPECT_EQ(kind_of([] { run_suite("nonsense", 1, 1, 1e-8); }), ErrorKind::UnknownSuite);
}

TEST(Suites, RegistryIsExhaustive) {
  std::set<std::string_view> suites(kSuiteNames.begin(), kSuiteNames.end());
  for (const RegistryEntry& e : kRegistry) EXPECT_TRUE(suites.count(e.suite)) << e.check;
  for (std::string_view suite : kSuiteNames) {
    const int samples = suite == "convolution" ? 1 : 3;
    const VerificationReport r = run_suite(suite, samples, 9, 1e-8);
    EXPECT_TRUE(r.passed) << suite;
    std::set<std::string> seen;
    for (const IdentityCheck& c : r.checks) seen.insert(c.name);
    for (const RegistryEntry& e : kRegistry)
      if (e.suite == suite) {
        EXPECT_TRUE(seen.count(std::string(e.check))) << e.check;
      }
    for (const std::string& name : seen) {
      const bool known = std::any_of(kRegistry.begin(), kRegistry.end(),
                                     [&](const RegistryEntry& e) { return e.check == name && e.suite == suite; });
      EXPECT_TRUE(known) << name;
    }
  }
}

TEST(Suites, DeterministicUnderSeedAndThreads) {
  const VerificationReport a = run_suite("identities", 4, 123, 1e-8, 1);
  const VerificationReport b = run_suite("identities", 4, 123, 1e-8, 3);
  ASSERT_EQ(a.checks.size(), b.checks.size());
  for (std::size_t i = 0; i < a.checks.size(); ++i) {
    EXPECT_EQ(a.checks[i].name, b.checks[i].name);
    EXPECT_EQ(a.checks[i].witness, b.checks[i].witness);
    EXPECT_EQ(a.checks[i].residual, b.checks[i].residual);
  }
  const VerificationReport c = run_suite("identities", 4, 124, 1e-8, 1);
  EXPECT_NE(a.checks.front().witness, c.checks.front().witness);
}

TEST(Suites, FailuresCarryWitness) {
  // a tolerance of zero cannot be met by floating-point residuals
  const VerificationReport r = run_suite("closed_forms", 3, 1, 0.0);
  EXPECT_FALSE(r.passed);
  for (const IdentityCheck& c : r.checks)
    if (!c.passed) {
      EXPECT_FALSE(c.witness.empty());
    }
}
