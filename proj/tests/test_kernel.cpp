#include <gtest/gtest.h>

#include <random>

#include "hypc/kernel.hpp"

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

}  // namespace

TEST(Classify, Thresholds) {
  EXPECT_EQ(classify_convergence(GParams({{0, 0.4}}, {{0, 0.4}})).kind, Convergence::Absolute);
  EXPECT_EQ(classify_convergence(GParams({{0, 0.5}}, {{0, 0.5}})).kind, Convergence::Conditional);
  EXPECT_EQ(classify_convergence(GParams({{0, 2.0}}, {})).kind, Convergence::Divergent);
  EXPECT_TRUE(classify_convergence(GParams({{0, 0.4}}, {{0, 0.4}})).positive);
  EXPECT_FALSE(classify_convergence(GParams({{0, -0.4}}, {{0, 0.4}})).positive);
}

TEST(Kernel, SingleFactorIsGammaC) {
  const GParams g({{0, 2.0}}, {});
  EXPECT_EQ(kernel_eval(g, {0, 0.0}), cplx(0.0, 0.0));
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int n = 0; n < 20; ++n) {
    const LambdaPoint a{int(u(rng)), cplx(u(rng), u(rng))};
    const LambdaPoint s{int(u(rng)), cplx(u(rng), u(rng))};
    const cplx want = gamma_c_value(a + s);
    EXPECT_LE(std::abs(kernel_eval(GParams({a}, {}), s) - want), 1e-12 * std::abs(want));
  }
}

TEST(Kernel, TwoFactors) {
  const GParams g({{0, 0.5}}, {{0, 0.5}});
  EXPECT_NEAR(kernel_eval(g, {0, 0.0}).real(), 8.753758460905903, 1e-10);
  // b-factors see the mirrored point
  const LambdaPoint s{1, cplx(0.2, 0.3)};
  const cplx want = gamma_c_value(g.a_list()[0] + s) * gamma_c_value(g.b_list()[0] - s);
  EXPECT_LE(std::abs(kernel_eval(g, s) - want), 1e-13 * std::abs(want));
}

TEST(Poles, LeftFamily) {
  const std::vector<PolePoint> poles = left_poles(GParams({{0, 0.5}}, {}), 0, 10.0);
  ASSERT_EQ(poles.size(), 5u);
  for (int m = 0; m < 5; ++m) {
    EXPECT_NEAR(std::abs(poles[m].sigma - cplx(-0.5 - 2.0 * m, 0.0)), 0.0, 1e-14);
    EXPECT_EQ(poles[m].m, m);
    EXPECT_EQ(poles[m].m_prime, m);
    EXPECT_EQ(poles[m].side, PoleSide::Left);
  }
}

TEST(Poles, BaseCaseLocation) {
  // (m, m') = (0, 0) sits at k = a' - a, sigma = -(a + a')
  const LambdaPoint a{3, cplx(0.7, 0.2)};
  const int k = -a.k;
  const std::vector<PolePoint> poles = left_poles(GParams({a}, {}), k, 1.0);
  ASSERT_FALSE(poles.empty());
  EXPECT_EQ(poles[0].m, 0);
  EXPECT_EQ(poles[0].m_prime, 0);
  EXPECT_NEAR(std::abs(poles[0].sigma + a.sigma), 0.0, 1e-14);
  EXPECT_TRUE(left_poles(GParams({a}, {}), k + 1, 0.5).empty());
}

TEST(Poles, RightFamilyAndWindow) {
  const std::vector<PolePoint> poles = right_poles(GParams({}, {{0, 0.5}}), 0, 10.0);
  ASSERT_EQ(poles.size(), 5u);
  for (int m = 0; m < 5; ++m) EXPECT_NEAR(std::abs(poles[m].sigma - cplx(0.5 + 2.0 * m, 0.0)), 0.0, 1e-14);
  EXPECT_TRUE(right_poles(GParams({}, {{0, 0.5}}), 0, 0.1).empty());
}

TEST(Poles, EveryListedPoleIsAKernelPole) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int n = 0; n < 20; ++n) {
    const GParams g({{int(u(rng)), cplx(u(rng), u(rng))}}, {{int(u(rng)), cplx(u(rng), u(rng))}});
    for (int k = -3; k <= 3; ++k) {
      for (const PolePoint& p : left_poles(g, k, 8.0)) {
        const LambdaPoint x = g.a_list()[p.index] + LambdaPoint{k, p.sigma};
        EXPECT_TRUE(gamma_c(x).is_pole);
      }
      for (const PolePoint& p : right_poles(g, k, 8.0)) {
        const LambdaPoint x = g.b_list()[p.index] - LambdaPoint{k, p.sigma};
        EXPECT_TRUE(gamma_c(x).is_pole);
      }
    }
  }
}

TEST(Collisions, Detection) {
  EXPECT_TRUE(detect_collisions(GParams({{0, 0.5}}, {{0, 0.5}})).empty());
  // a + b = -m, a' + b' = -m' with m, m' >= 0; the pairs 1|1 + ... with positive sums never collide
  EXPECT_TRUE(detect_collisions(GParams({{0, 1.0}}, {{0, 1.0}})).empty());
  EXPECT_TRUE(detect_collisions(GParams({{1, 1.5}}, {{-1, 0.5}})).empty());
  const std::vector<Collision> c = detect_collisions(GParams({{0, 0.4}}, {{1, -3.4}}));
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c[0].m, 1);
  EXPECT_EQ(c[0].m_prime, 2);
}

TEST(Contour, SeparationCases) {
  const ContourSpec plain = separating_contour(GParams({{0, 0.4}}, {{0, 0.4}}), 0);
  EXPECT_TRUE(plain.detours.empty());
  EXPECT_EQ(plain.base_offset, 0.0);

  const ContourSpec bent = separating_contour(GParams({{0, -0.5}}, {}), 0);
  ASSERT_EQ(bent.detours.size(), 1u);
  EXPECT_NEAR(std::abs(bent.detours[0].center - 0.5), 0.0, 1e-14);
  EXPECT_EQ(bent.detours[0].side, PoleSide::Left);
  EXPECT_GT(bent.detours[0].radius, 0.0);
  EXPECT_LE(bent.detours[0].radius, kDetourCap);

  EXPECT_EQ(kind_of([] { separating_contour(GParams({{0, 0.4}}, {{1, -3.4}}), 0); }), ErrorKind::ParameterCollision);
}

TEST(Contour, DetoursStayApartFromOtherPoles) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-2.5, 2.5);
  for (int n = 0; n < 30; ++n) {
    const GParams g({{int(u(rng)), cplx(u(rng), 0.3 * u(rng))}}, {{int(u(rng)), cplx(u(rng), 0.3 * u(rng))}});
    if (!detect_collisions(g).empty()) continue;
    for (int k = -2; k <= 2; ++k) {
      const ContourSpec spec = separating_contour(g, k);
      std::vector<PolePoint> all = left_poles(g, k, 12.0);
      const std::vector<PolePoint> right = right_poles(g, k, 12.0);
      all.insert(all.end(), right.begin(), right.end());
      for (const Detour& d : spec.detours)
        for (const PolePoint& p : all) {
          const double gap = std::abs(p.sigma - d.center);
          if (gap > 1e-6) {
            EXPECT_GT(gap, d.radius);
          }
        }
      // every pole on the wrong side of the line is enclosed
      for (const PolePoint& p : all) {
        const bool wrong = (p.side == PoleSide::Left) ? p.sigma.real() >= 0.0 : p.sigma.real() <= 0.0;
        if (!wrong) continue;
        const bool enclosed = std::any_of(spec.detours.begin(), spec.detours.end(),
                                          [&](const Detour& d) { return std::abs(p.sigma - d.center) < 1e-6; });
        EXPECT_TRUE(enclosed) << "k=" << k;
      }
    }
  }
}
