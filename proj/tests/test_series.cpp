#include <gtest/gtest.h>

#include <random>

#include "hypc/series.hpp"

using namespace hypc;

namespace {

double rel(cplx x, cplx y) { return std::abs(x - y) / std::abs(y); }

cplx run(std::vector<cplx> num, std::vector<cplx> den, cplx z, SeriesConfig cfg = {}) {
  return hyp_pfq(num, den, z, cfg).value;
}

}  // namespace

TEST(Pochhammer, Values) {
  EXPECT_EQ(pochhammer(cplx(3.3, 1.0), 0), cplx(1.0, 0.0));
  EXPECT_EQ(pochhammer(1.0, 5), cplx(120.0, 0.0));
  EXPECT_EQ(pochhammer(0.5, 2), cplx(0.75, 0.0));
}

TEST(HypPfq, ElementaryCases) {
  EXPECT_LE(rel(run({}, {}, 1.0), std::exp(1.0)), 1e-15);
  EXPECT_LE(rel(run({1.0}, {}, 0.5), 2.0), 1e-15);
  EXPECT_LE(rel(run({1.0, 1.0}, {2.0}, 0.5), 2.0 * std::log(2.0)), 1e-14);
}

TEST(HypPfq, ReferenceValues) {
  // mpmath hyp3f2 and hyp1f1
  EXPECT_LE(rel(run({0.5, 1.5, 2.0}, {3.0, cplx(1.25, 1.0)}, cplx(-0.8, 0.3)), cplx(0.86298232564623245, 0.14126952734033821)),
            1e-13);
  EXPECT_LE(rel(run({cplx(0.3, 0.2)}, {1.7}, cplx(-12.0, 5.0)), cplx(0.40552565808896254, -0.17730479931058656)), 1e-9);
}

TEST(HypPfq, TerminatingSeries) {
  // 2F1(-2, 1; 1; z) = (1 - z)^2, fine even outside the disk
  EXPECT_LE(rel(run({-2.0, 1.0}, {1.0}, 3.0), 4.0), 1e-15);
}

TEST(HypPfq, DomainErrors) {
  auto kind = [](auto&& f) {
    try {
      f();
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::Indeterminate;
  };
  EXPECT_EQ(kind([] { run({1.0, 2.0}, {3.0}, std::polar(1.0, 0.3)); }), ErrorKind::SeriesDivergent);
  EXPECT_EQ(kind([] { run({1.0, 2.0, 3.0}, {3.0}, 0.1); }), ErrorKind::SeriesDivergent);
  EXPECT_EQ(kind([] { run({1.0}, {-2.0}, 0.1); }), ErrorKind::DenominatorPole);
  EXPECT_EQ(kind([] { run({0.5}, {1.5}, 30.0, SeriesConfig{1e-17, 0.0, 10}); }), ErrorKind::BudgetExceeded);
}

TEST(HypPfqProperties, DerivativeAtOrigin) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.2, 3.0);
  for (int n = 0; n < 50; ++n) {
    std::vector<cplx> num{cplx(u(rng), u(rng) - 1.5), u(rng)};
    std::vector<cplx> den{cplx(u(rng), 0.3)};
    const double h = 1e-6;
    const cplx fd = (run(num, den, h) - run(num, den, -h)) / (2.0 * h);
    const cplx want = num[0] * num[1] / den[0];
    EXPECT_LE(rel(fd, want), 1e-6);
  }
}

TEST(HypPfqProperties, TermCountMonotoneAndSelfConsistent) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int n = 0; n < 30; ++n) {
    const std::vector<cplx> num{cplx(u(rng), u(rng))};
    const std::vector<cplx> den{cplx(1.5 + u(rng) * 0.5, u(rng)), cplx(0.7, u(rng))};
    const cplx z(4.0 * u(rng), 4.0 * u(rng));
    const SeriesResult loose = hyp_pfq(num, den, z, {1e-10, 0.0, 20000});
    const SeriesResult tight = hyp_pfq(num, den, z, {1e-11, 0.0, 20000});
    const SeriesResult strict = hyp_pfq(num, den, z, {2.5e-18, 0.0, 20000});
    EXPECT_GE(tight.terms_used, loose.terms_used);
    EXPECT_LE(rel(hyp_pfq(num, den, z).value, strict.value), 1e-10);
  }
}
