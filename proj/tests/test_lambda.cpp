#include <gtest/gtest.h>

#include <random>

#include "hypc/lambda.hpp"

using namespace hypc;

TEST(Lattice, ComponentsFromKAndSigma) {
  const LambdaPoint p{3, cplx(0.5, 0.25)};
  EXPECT_NEAR(std::abs(p.a() - cplx(1.75, 0.125)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(p.a_prime() - cplx(-1.25, 0.125)), 0.0, 1e-15);
}

TEST(Lattice, FromComponentsRoundsToInteger) {
  const LambdaPoint p = lambda_from_ab(cplx(1.25, 0.1), cplx(0.25 + 1e-11, 0.1));
  EXPECT_EQ(p.k, 1);
  EXPECT_NEAR(p.sigma.real(), 1.5, 1e-10);
  EXPECT_THROW(lambda_from_ab(0.5, 0.0), Error);
  try {
    lambda_from_ab(0.5, 0.0);
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotOnLattice);
  }
}

TEST(Lattice, IntegerPointAndScalarShift) {
  const LambdaPoint p = integer_point(2, 5);
  EXPECT_EQ(p.a(), cplx(2.0, 0.0));
  EXPECT_EQ(p.a_prime(), cplx(5.0, 0.0));
  const LambdaPoint q = add_scalar(p, 0.5);
  EXPECT_EQ(q.a(), cplx(2.5, 0.0));
  EXPECT_EQ(q.a_prime(), cplx(5.5, 0.0));
  EXPECT_EQ(kShiftA, integer_point(1, 0));
  EXPECT_EQ(kShiftAPrime, integer_point(0, 1));
  EXPECT_EQ(kOne, integer_point(1, 1));
}

TEST(Lattice, SignOfK) {
  EXPECT_EQ(neg_one_power(LambdaPoint{-3, cplx(7.0, 1.0)}), cplx(-1.0, 0.0));
  EXPECT_EQ(neg_one_power(LambdaPoint{4, 0.0}), cplx(1.0, 0.0));
  EXPECT_EQ(neg_one_power(-1), -1.0);
}

TEST(DoublePower, SimpleValues) {
  // z^{1|1} = |z|^2
  EXPECT_NEAR(std::abs(double_power(cplx(3.0, 4.0), integer_point(1, 1)) - 25.0), 0.0, 1e-12);
  // z^{1|0} = z
  EXPECT_NEAR(std::abs(double_power(cplx(-2.0, 0.5), kShiftA) - cplx(-2.0, 0.5)), 0.0, 1e-14);
  // z^{0|1} = conj z
  EXPECT_NEAR(std::abs(double_power(cplx(-2.0, 0.5), kShiftAPrime) - cplx(-2.0, -0.5)), 0.0, 1e-14);
  EXPECT_THROW(double_power(0.0, kOne), Error);
}

TEST(DoublePower, PrincipalArgumentOnNegativeAxis) {
  EXPECT_DOUBLE_EQ(principal_arg(cplx(-1.0, 0.0)), std::numbers::pi);
  EXPECT_DOUBLE_EQ(principal_arg(cplx(-1.0, -0.0)), std::numbers::pi);
  // odd k picks up exp(i pi k) = -1 on the negative axis
  EXPECT_NEAR(std::abs(double_power(-4.0, LambdaPoint{1, 0.0}) + 1.0), 0.0, 1e-14);
}

TEST(DoublePower, MultiplicativeModulusAndUnitary) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  std::uniform_int_distribution<int> ki(-5, 5);
  for (int n = 0; n < 100; ++n) {
    const cplx z(u(rng), u(rng));
    const LambdaPoint p{ki(rng), cplx(u(rng), u(rng))};
    const LambdaPoint q{ki(rng), cplx(u(rng), u(rng))};
    const cplx lhs = double_power(z, p) * double_power(z, q);
    const cplx rhs = double_power(z, p + q);
    EXPECT_LE(std::abs(lhs - rhs) / std::abs(rhs), 1e-12);
    EXPECT_LE(std::abs(std::abs(double_power(z, p)) / std::pow(std::abs(z), p.sigma.real()) - 1.0), 1e-12);
    const LambdaPoint unitary{p.k, cplx(0.0, p.sigma.imag())};
    EXPECT_NEAR(std::abs(double_power(z, unitary)), 1.0, 1e-12);
  }
}

TEST(Parsing, LambdaTextRoundTrip) {
  const LambdaPoint p = parse_lambda(" -2:0.75:-1.5 ");
  EXPECT_EQ(p.k, -2);
  EXPECT_EQ(p.sigma, cplx(0.75, -1.5));
  EXPECT_EQ(parse_lambda(format_lambda(LambdaPoint{7, cplx(0.1, 1.0 / 3.0)})), (LambdaPoint{7, cplx(0.1, 1.0 / 3.0)}));
  const LambdaList list = parse_lambda_list("0:0.5:0;1:0.8:0.1");
  ASSERT_EQ(list.size(), 2u);
  EXPECT_EQ(list[1], (LambdaPoint{1, cplx(0.8, 0.1)}));
  EXPECT_TRUE(parse_lambda_list("").empty());
  EXPECT_EQ(parse_lambda_list(format_lambda_list(list)), list);
  EXPECT_THROW(parse_lambda("x"), Error);
  EXPECT_THROW(parse_lambda("1:2"), Error);
  EXPECT_THROW(parse_lambda("1.5:2:0"), Error);
}

TEST(Parsing, ComplexText) {
  EXPECT_EQ(parse_complex("2+0i"), cplx(2.0, 0.0));
  EXPECT_EQ(parse_complex("-0.3+0.6i"), cplx(-0.3, 0.6));
  EXPECT_EQ(parse_complex("1e-3-2e+1i"), cplx(1e-3, -20.0));
  EXPECT_EQ(parse_complex("0.5"), cplx(0.5, 0.0));
  EXPECT_EQ(parse_complex("-i"), cplx(0.0, -1.0));
  EXPECT_EQ(parse_complex("+3i"), cplx(0.0, 3.0));
  EXPECT_THROW(parse_complex("two"), Error);
  EXPECT_THROW(parse_complex(""), Error);
}
