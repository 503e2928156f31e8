#include <gtest/gtest.h>

#include <array>
#include <cmath>

#include "fixtures.hpp"
#include "oracle.hpp"
#include "syspredict/distortion.hpp"
#include "syspredict/error.hpp"

using namespace syspredict;
using namespace fixtures;

namespace {

std::vector<SurvivalCopula> copulas(int n) {
  return {SurvivalCopula::product(n), SurvivalCopula::fgm(n, 0.9), SurvivalCopula::fgm(n, -1.0),
          SurvivalCopula::clayton_pair(n, 1, n, 2.0), SurvivalCopula::clayton_pair(n, 2, 3, 0.5)};
}

std::vector<std::vector<SystemStructure>> pairs() {
  const SystemStructure bridge5 = SystemStructure::validate(5, {{1, 4}, {2, 5}, {1, 3, 5}, {2, 3, 4}});
  return {
      bridge_pair(),
      guard_pair(),
      first_and_last(),
      {SystemStructure::order_statistic(2, 3), SystemStructure::parallel(3)},
      {SystemStructure::series(5), bridge5},
      {SystemStructure::order_statistic(2, 5), bridge5},
      {SystemStructure::validate(4, {{1, 2}, {3, 4}}), SystemStructure::validate(4, {{1}, {2}, {3, 4}})},
  };
}

}  // namespace

TEST(Distortion, UnivariateMatchesBruteForce) {
  for (const auto& pr : pairs()) {
    for (const SurvivalCopula& c : copulas(pr[1].n())) {
      const UnivariateDistortion q = build_univariate(pr[1], c);
      for (double u : {0.05, 0.3, 0.62, 0.97}) {
        const std::array<double, 1> lv{u};
        EXPECT_NEAR(q(u), oracle::joint_survival(std::span(&pr[1], 1), lv, c), 1e-12) << c.name();
      }
      EXPECT_NEAR(q(1.0), 1.0, 1e-12);
      EXPECT_NEAR(q(0.0), 0.0, 1e-12);
    }
  }
}

TEST(Distortion, BivariateMatchesBruteForce) {
  for (const auto& pr : pairs()) {
    for (const SurvivalCopula& c : copulas(pr[1].n())) {
      const BivariateDistortion d = build_bivariate(pr[0], pr[1], c, Ordering::kWeak);
      for (double u : {0.1, 0.45, 0.8}) {
        for (double v : {0.05, 0.3, 0.45, 0.7, 0.95}) {
          const std::array<double, 2> lv{u, v};
          EXPECT_NEAR(d(u, v), oracle::joint_survival(pr, lv, c), 1e-12)
              << c.name() << " u=" << u << " v=" << v;
        }
      }
    }
  }
}

TEST(Distortion, TrivariateMatchesBruteForce) {
  const SystemStructure bridge5 = SystemStructure::validate(5, {{1, 4}, {2, 5}, {1, 3, 5}, {2, 3, 4}});
  const std::vector<std::vector<SystemStructure>> triples{
      order_triple(),
      {SystemStructure::series(5), SystemStructure::order_statistic(2, 5), bridge5},
      {SystemStructure::order_statistic(1, 4), SystemStructure::order_statistic(2, 4),
       SystemStructure::validate(4, {{1}, {2}, {3, 4}})},
  };
  for (const auto& tr : triples) {
    for (const SurvivalCopula& c : copulas(tr[0].n())) {
      const TrivariateDistortion d = build_trivariate(tr[0], tr[1], tr[2], c);
      for (const auto& [u, v, w] : {std::array{0.9, 0.6, 0.2}, {0.5, 0.45, 0.1}, {0.7, 0.7, 0.3}, {0.8, 0.3, 0.3}}) {
        const std::array<double, 3> lv{u, v, w};
        EXPECT_NEAR(d(u, v, w), oracle::joint_survival(tr, lv, c), 1e-12) << c.name();
        const std::array<double, 2> lb{u, v};
        EXPECT_NEAR(d.boundary(u, v), oracle::joint_survival(std::span(tr).first(2), lb, c), 1e-12);
      }
    }
  }
}

TEST(Distortion, ZeroPlusLimitAndBoundary) {
  const auto s = bridge_pair();
  for (const SurvivalCopula& c : copulas(3)) {
    const BivariateDistortion d = build_bivariate(s[0], s[1], c, Ordering::kStrict);
    for (double u : {0.2, 0.7}) {
      EXPECT_NEAR(d.d1_at_zero_plus(u), d.d1(u, 1e-9), 1e-7) << c.name();
      // ∂1D̂(u, v) at v = u from above is q̄'_{T1}(u)
      EXPECT_NEAR(d.d1(u, 0.99, Side::kAboveDiagonal), d.first_failure().derivative(u), 1e-14);
    }
  }
}

TEST(Distortion, RegionAndDimensionErrors) {
  const auto s = bridge_pair();
  const BivariateDistortion d = build_bivariate(s[0], s[1], SurvivalCopula::product(3), Ordering::kStrict);
  EXPECT_THROW(d.d1(0.3, 0.6, Side::kBelowDiagonal), Error);
  EXPECT_THROW(d.d1(0.6, 0.3, Side::kAboveDiagonal), Error);
  EXPECT_NO_THROW(d.d1(0.4, 0.4, Side::kAboveDiagonal));
  EXPECT_THROW(build_bivariate(s[0], s[1], SurvivalCopula::product(4), Ordering::kStrict), Error);
  EXPECT_THROW(build_univariate(s[1], SurvivalCopula::product(2)), Error);
  const auto t = order_triple();
  const TrivariateDistortion d3 = build_trivariate(t[0], t[1], t[2], SurvivalCopula::product(3));
  try {
    d3(0.3, 0.5, 0.1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kRegionError);
  }
}

TEST(Distortion, SliceTermsAreMerged) {
  const auto s = bridge_pair();
  const BivariateDistortion d = build_bivariate(s[0], s[1], SurvivalCopula::product(3), Ordering::kStrict);
  // u²v + uv² - v³: three slices
  EXPECT_EQ(d.below_diagonal().terms().size(), 3u);
  for (const SliceTerm& t : d.below_diagonal().terms()) EXPECT_NE(t.coeff, 0);
}
