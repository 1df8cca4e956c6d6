#include <gtest/gtest.h>

#include <random>

#include "hypc/gamma.hpp"
#include "hypc/identities.hpp"

using namespace hypc;

namespace {

double rel(cplx x, cplx y) { return std::abs(x - y) / std::abs(y); }

LambdaPoint ab(cplx a, cplx a_prime) { return lambda_from_ab(a, a_prime); }

}  // namespace

TEST(LogGamma, ClassicalValues) {
  EXPECT_NEAR(std::abs(log_gamma_complex(1.0)), 0.0, 1e-14);
  EXPECT_NEAR(log_gamma_complex(0.5).real(), 0.5723649429247001, 1e-13);
  EXPECT_NEAR(log_gamma_complex(5.0).real(), std::log(24.0), 1e-13);
}

TEST(LogGamma, MatchesReferenceModuloBranch) {
  // mpmath loggamma
  struct Case {
    cplx z, want;
  };
  for (const Case& c : {Case{cplx(0.3, 4.0), cplx(-5.6410635348205287, 1.2364491215498066)},
                        Case{cplx(-2.7, 0.1), cplx(-0.14226251388177147, -9.5255754419063925)}}) {
    const cplx got = log_gamma_complex(c.z);
    EXPECT_NEAR(got.real(), c.want.real(), 1e-12);
    EXPECT_NEAR(std::abs(std::exp(cplx(0.0, got.imag() - c.want.imag())) - 1.0), 0.0, 1e-12);
  }
}

TEST(GammaC, PointValues) {
  EXPECT_NEAR(std::abs(gamma_c_value(ab(1.0, 0.0)) - 1.0), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(gamma_c_value(ab(1.0, 1.0))), 0.0, 0.0);
  EXPECT_NEAR(std::abs(gamma_c_value(ab(0.5, 0.5)) - 1.0), 0.0, 1e-14);
  // Gamma(a)/Gamma(1-a') at (2|-1) is 1!/1! = 1, with no (-1)^k.
  EXPECT_NEAR(std::abs(gamma_c_value(ab(2.0, -1.0)) - 1.0), 0.0, 1e-14);
}

TEST(GammaC, PoleRecord) {
  const GammaValue v = gamma_c(ab(0.0, 0.0));
  EXPECT_TRUE(v.is_pole);
  ASSERT_TRUE(v.residue.has_value());
  EXPECT_EQ(*v.residue, cplx(1.0, 0.0));
  EXPECT_THROW(gamma_c_value(ab(-2.0, -1.0)), Error);
}

TEST(GammaC, Residues) {
  EXPECT_EQ(gamma_c_residue(0, 0), cplx(1.0, 0.0));
  EXPECT_EQ(gamma_c_residue(1, 0), cplx(-1.0, 0.0));
  EXPECT_NEAR(std::abs(gamma_c_residue(2, 1) - 0.5), 0.0, 1e-15);
}

TEST(GammaC, ReferenceValues) {
  // mpmath: gamma(a)/gamma(1-a')
  EXPECT_LE(rel(gamma_c_value({3, cplx(0.7, 1.2)}), cplx(0.74461232040602253, 0.43680128004892648)), 1e-13);
  EXPECT_LE(rel(gamma_c_value({-2, cplx(-1.3, 0.4)}), cplx(1.3624747985614748, -0.55272314465869642)), 1e-13);
  EXPECT_LE(rel(gamma_c_value({5, cplx(2.5, -3.0)}), cplx(-4.713669271742412, -1.5327535420640332)), 1e-13);
}

TEST(GammaC, BothClosedFormsAgreeNearSwitch) {
  // a within 0.05 of a nonpositive integer uses the other closed form
  for (double eps : {0.049, 0.051}) {
    const LambdaPoint p = ab(cplx(-2.0 + eps, 0.01), cplx(-1.0 + eps, 0.01));
    const cplx direct = std::exp(log_gamma_complex(p.a()) - log_gamma_complex(1.0 - p.a_prime()));
    EXPECT_LE(rel(gamma_c_value(p), direct), 1e-12);
  }
}

TEST(GammaC, SineProductForm) {
  // Gamma(a) Gamma(a') sin(pi a') / pi
  const LambdaPoint p{1, cplx(0.4, 0.3)};
  const cplx a = p.a(), ap = p.a_prime();
  const cplx sine_form = std::exp(log_gamma_complex(a) + log_gamma_complex(ap)) * std::sin(std::numbers::pi * ap) / std::numbers::pi;
  EXPECT_LE(rel(gamma_c_value(p), sine_form), 1e-13);
}

TEST(BetaC, Values) {
  const BetaValue quarter = beta_c(ab(0.25, 0.25), ab(0.25, 0.25));
  EXPECT_FALSE(quarter.infinite);
  EXPECT_NEAR(quarter.value.real(), 8.753758460905903, 1e-10);
  EXPECT_NEAR(std::abs(beta_c(ab(1.0, 0.0), ab(1.0, 0.0)).value - 1.0), 0.0, 1e-14);
  EXPECT_TRUE(beta_c(ab(0.5, 0.5), ab(0.5, 0.5)).infinite);
}

TEST(GammaC, AsymptoticModulus) {
  const LambdaPoint base{0, 1.0};
  const LambdaPoint xi = asymptotic_shift(cplx(0.0, 100.0));
  EXPECT_NEAR(std::abs(gamma_c_asymptotic(base, xi)), 1.0, 1e-12);
  const LambdaPoint far = asymptotic_shift(cplx(0.0, 1e4));
  // |Gamma_c(xi)| ~ |xi|^{-1} for base 0|0
  EXPECT_LE(std::abs(std::abs(gamma_c_value(LambdaPoint{0, 0.0} + far)) * 1e4 - 1.0), 1e-3);
}

TEST(GammaC, AsymptoticRatioImproves) {
  const LambdaPoint base{1, cplx(0.3, 0.2)};
  double previous = 1.0;
  for (double modulus : {50.0, 100.0, 500.0, 2000.0}) {
    const cplx xi(0.0, modulus);
    const double dev = std::abs(gamma_c_value(base + asymptotic_shift(xi)) / gamma_c_asymptotic(base, asymptotic_shift(xi)) - 1.0);
    EXPECT_LE(dev, 2.0 / modulus);
    EXPECT_LT(dev, previous);
    previous = dev;
  }
}

// Property checks on random lattice points; the identities live in identities.hpp.
TEST(GammaCProperties, IdentitiesOnRandomPoints) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-6.0, 6.0);
  std::uniform_int_distribution<int> ki(-6, 6);
  int done = 0;
  while (done < 200) {
    const LambdaPoint x{ki(rng), cplx(u(rng), u(rng))};
    if (std::abs(x.sigma) > 6.0 || detail::dist_to_integer(x.a()) < 0.05 || detail::dist_to_integer(x.a_prime()) < 0.05)
      continue;
    ++done;
    EXPECT_TRUE(check_gamma_transposition(x, 1e-11).passed) << format_lambda(x);
    EXPECT_TRUE(check_gamma_reflection(x, 1e-11).passed) << format_lambda(x);
    EXPECT_TRUE(check_gamma_shift_up(x, done % 5, (done / 5) % 5, 1e-11).passed) << format_lambda(x);
    EXPECT_TRUE(check_gamma_shift_down(x, (done / 5) % 5, done % 5, 1e-11).passed) << format_lambda(x);
  }
}

TEST(GammaCProperties, ResidueLimit) {
  for (int m = 0; m <= 3; ++m)
    for (int mp = 0; mp <= 3; ++mp) EXPECT_TRUE(check_gamma_residue(m, mp).passed);
}

TEST(GammaCProperties, IntegerTable) {
  for (int m = 1; m <= 10; ++m)
    for (int k = 0; k <= 10; ++k) EXPECT_TRUE(check_gamma_integer_value(m, k, 1e-12).passed);
  for (int k = 1; k <= 5; ++k)
    for (int l = 1; l <= 5; ++l) EXPECT_TRUE(check_gamma_integer_zero(k, l).passed);
}

TEST(GammaCProperties, LogLogSlope) {
  for (const LambdaPoint base : {LambdaPoint{0, cplx(2.0, 0.0)}, LambdaPoint{1, cplx(-0.5, 0.3)}, LambdaPoint{-2, cplx(3.5, -1.0)}})
    EXPECT_TRUE(check_gamma_asymptotic_slope(base).passed) << format_lambda(base);
}
