#include <gtest/gtest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>

#include "fixtures.hpp"
#include "syspredict/error.hpp"
#include "syspredict/predictor.hpp"

using namespace syspredict;
using namespace fixtures;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return static_cast<ErrorCode>(-1);
}

}  // namespace

// Pr(T > y | T1 = t) = ∂x Ḡ(t, y) / ∂x Ḡ(t, 0), with Ḡ written out for the
// Clayton-coupled bridge system and differentiated numerically.
TEST(Predictor, ClaytonBridgeMatchesJointSurvivalDerivative) {
  const Marginal m = unit_exponential();
  auto G = [&](double x, double y) {
    const double a = m.sf(x), b = m.sf(y);
    if (y < x) return a * a / (2 - a);
    return a * b / (2 - a) + a * b / (2 - b) - b * b / (2 - b);
  };
  const ConditionalPredictor p = make_predictor(PredictionCase::kI, bridge_pair(), clayton23(), m);
  const double h = 1e-5;
  for (double t : {0.046, 0.3, 1.1}) {
    const double denom = (G(t + h, 0.0) - G(t - h, 0.0)) / (2 * h);
    for (double y : {t + 0.01, t + 0.3, t + 1.0, t + 3.0}) {
      const double num = (G(t + h, y) - G(t - h, y)) / (2 * h);
      EXPECT_NEAR(survival_case1(p, t, y), num / denom, 1e-7) << t << " " << y;
    }
  }
}

// Order statistics from IID components against the beta representation.
TEST(Predictor, OrderStatisticsMatchBetaRule) {
  for (const Marginal& m : {unit_exponential(), Marginal::weibull(2.0, 1.5)}) {
    for (auto [n, r, s] : {std::array{5, 1, 3}, {5, 2, 5}, {4, 1, 4}, {6, 2, 4}}) {
      const std::vector<SystemStructure> st{SystemStructure::order_statistic(r, n),
                                            SystemStructure::order_statistic(s, n)};
      if (r > 1) continue;  // Case I conditions on the first failure time only
      const ConditionalPredictor p = make_predictor(PredictionCase::kI, st, SurvivalCopula::product(n), m);
      for (double t : {0.1, 0.6}) {
        for (double y : {t + 0.05, t + 0.5, t + 1.5}) {
          EXPECT_NEAR(survival_case1(p, t, y), kofn_survival(n, r, s, t, y, m), 1e-12);
        }
        for (double w : {0.1, 0.5, 0.9}) {
          const double beta = kofn_quantile_factor(n, r, s, w);
          EXPECT_NEAR(p.quantile(w, {t, std::nullopt}), m.inv_sf(beta * m.sf(t)), 1e-9);
          EXPECT_NEAR(p.survival({t, std::nullopt}, p.quantile(w, {t, std::nullopt})), w, 1e-10);
        }
      }
    }
  }
}

TEST(Predictor, KofnFactor) {
  EXPECT_NEAR(kofn_quantile_factor(10, 2, 5, 0.5), 0.679481, 5e-7);
  EXPECT_EQ(code_of([] { kofn_quantile_factor(5, 3, 3, 0.5); }), ErrorCode::kInvalidOrder);
  EXPECT_EQ(code_of([] { kofn_quantile_factor(5, 1, 6, 0.5); }), ErrorCode::kInvalidOrder);
  EXPECT_EQ(code_of([] { kofn_survival(5, 1, 3, 1.0, 0.5, Marginal::exponential(1)); }), ErrorCode::kOutOfRange);
}

TEST(Predictor, ClosedFormsAgreeWithBisection) {
  const Marginal m = Marginal::weibull(1.4, 2.0);
  struct Case {
    PredictionCase kind;
    std::vector<SystemStructure> s;
    SurvivalCopula c;
  };
  const std::vector<Case> cases{
      {PredictionCase::kI, bridge_pair(), SurvivalCopula::product(3)},
      {PredictionCase::kIIa, guard_pair(), SurvivalCopula::product(3)},
      {PredictionCase::kIIb, guard_pair(), SurvivalCopula::product(3)},
      {PredictionCase::kIII, order_triple(), SurvivalCopula::product(3)},
      {PredictionCase::kIII, order_triple(), fgm3(0.8)},
      {PredictionCase::kIII, order_triple(), fgm3(-1.0)},
  };
  for (const Case& k : cases) {
    ConditionalPredictor p = make_predictor(k.kind, k.s, k.c, m);
    ASSERT_TRUE(p.has_closed_form());
    for (const Condition& at : {Condition{0.2, 0.5}, Condition{1.0, 2.2}}) {
      for (double w : {0.05, 0.3, 0.5, 0.66, 0.7, 0.95}) {
        p.use_closed_form(true);
        const double fast = p.quantile(w, at);
        p.use_closed_form(false);
        EXPECT_NEAR(fast, p.quantile(w, at), 1e-9 * std::max(1.0, fast)) << static_cast<int>(k.kind) << " w=" << w;
      }
    }
  }
  // no closed form off the listed configurations
  EXPECT_FALSE(make_predictor(PredictionCase::kI, bridge_pair(), clayton23(), m).has_closed_form());
  EXPECT_FALSE(make_predictor(PredictionCase::kIIb, guard_pair(), fgm3(), m).has_closed_form());
}

TEST(Predictor, CaseTwoRelations) {
  const Marginal m = unit_exponential();
  const ConditionalPredictor b = make_predictor(PredictionCase::kIIb, guard_pair(), fgm3(0.5), m);
  const ConditionalPredictor a = make_predictor(PredictionCase::kIIa, guard_pair(), fgm3(0.5), m);
  for (double t : {0.1, 0.9}) {
    const double alpha = b.alpha(t);
    for (double y : {t + 0.1, t + 1.0}) {
      EXPECT_NEAR(survival_case2a(a, t, y) * alpha, survival_case2b(b, t, y), 1e-13);
    }
    // atom: quantiles above α collapse to t
    EXPECT_DOUBLE_EQ(b.quantile(0.8, {t, std::nullopt}), t);
    EXPECT_GT(b.quantile(0.6, {t, std::nullopt}), t);
    EXPECT_DOUBLE_EQ(b.survival({t, std::nullopt}, t), 1.0);
  }
}

TEST(Predictor, MeanMatchesTimeDomainIntegral) {
  for (const Marginal& m : {unit_exponential(), Marginal::weibull(2.5, 1.0), Marginal::weibull(0.7, 1.0)}) {
    const ConditionalPredictor p = make_predictor(PredictionCase::kI, bridge_pair(), clayton23(), m);
    for (double t : {0.05, 0.5}) {
      const Condition at{t, std::nullopt};
      const double tail = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
          [&](double y) { return p.survival(at, t + y); }, 0.0, std::numeric_limits<double>::infinity(), 15, 1e-12);
      EXPECT_NEAR(p.mean(at), t + tail, 1e-7) << m.describe();
    }
  }
}

TEST(Predictor, SystemMean) {
  EXPECT_NEAR(system_mean(bridge_pair()[1], SurvivalCopula::product(3), Marginal::exponential(2.0)), 7.0 / 3.0, 1e-9);
  // parallel of three IID Weibull(2, 1): ∫ 1 - (1 - e^{-t²})³ dt
  const double ref = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      [](double t) { return 1.0 - std::pow(1.0 - std::exp(-t * t), 3); }, 0.0, 10.0, 15, 1e-13);
  EXPECT_NEAR(system_mean(SystemStructure::parallel(3), SurvivalCopula::product(3), Marginal::weibull(2.0, 1.0)), ref, 1e-9);
}

TEST(Predictor, CurvesAndBands) {
  const ConditionalPredictor p = make_predictor(PredictionCase::kI, bridge_pair(), SurvivalCopula::product(3), unit_exponential());
  const std::vector<Condition> grid{{0.0, std::nullopt}, {0.5, std::nullopt}, {1.0, std::nullopt}};
  const auto rows = prediction_curves(p, grid, BandKind::kCentered);
  ASSERT_EQ(rows.size(), 3u);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_DOUBLE_EQ(rows[i].t, grid[i].first);
    EXPECT_NEAR(rows[i].median, grid[i].first + 0.5427656, 1e-7);
    EXPECT_LT(rows[i].lower_90, rows[i].lower_50);
    EXPECT_LT(rows[i].lower_50, rows[i].median);
    EXPECT_LT(rows[i].median, rows[i].upper_50);
    EXPECT_LT(rows[i].upper_50, rows[i].upper_90);
  }
  // I90 = [F̄⁻¹(F̄(t)(√3.85 - 1)), F̄⁻¹(F̄(t)(√1.15 - 1))]
  EXPECT_NEAR(rows[1].lower_90, 0.5 - std::log(std::sqrt(3.85) - 1), 1e-12);
  EXPECT_NEAR(rows[1].upper_90, 0.5 - std::log(std::sqrt(1.15) - 1), 1e-12);
  const Interval bottom = p.band(grid[1], BandKind::kBottom, 0.9);
  EXPECT_DOUBLE_EQ(bottom.lower, 0.5);
  EXPECT_NEAR(bottom.upper, 0.5 - std::log(std::sqrt(1.3) - 1), 1e-12);
  const auto med = median_curve(p, grid);
  const auto mean = mean_curve(p, grid);
  EXPECT_NEAR(med[2], 1.5427656, 1e-7);
  EXPECT_NEAR(mean[2], 1.0 + 5.0 / 6.0, 1e-8);
}

TEST(Predictor, Errors) {
  const Marginal m = unit_exponential();
  const ConditionalPredictor p = make_predictor(PredictionCase::kI, bridge_pair(), SurvivalCopula::product(3), m);
  EXPECT_EQ(code_of([&] { survival_case3(p, 0.1, 0.2, 0.3); }), ErrorCode::kWrongCase);
  EXPECT_EQ(code_of([&] { survival_case2a(p, 0.1, 0.2); }), ErrorCode::kWrongCase);
  EXPECT_EQ(code_of([&] { p.quantile(1.0, {0.1, std::nullopt}); }), ErrorCode::kOutOfRange);
  EXPECT_EQ(code_of([&] { p.quantile(0.0, {0.1, std::nullopt}); }), ErrorCode::kOutOfRange);
  EXPECT_EQ(code_of([&] { p.survival({800.0, std::nullopt}, 900.0); }), ErrorCode::kDegenerateDenominator);
  EXPECT_EQ(code_of([&] { make_predictor(PredictionCase::kIII, bridge_pair(), SurvivalCopula::product(3), m); }),
            ErrorCode::kWrongCase);
  EXPECT_EQ(code_of([&] { make_predictor(PredictionCase::kI, order_triple(), SurvivalCopula::product(3), m); }),
            ErrorCode::kWrongCase);
  const std::vector<SystemStructure> same{SystemStructure::series(3), SystemStructure::series(3)};
  const ConditionalPredictor never = make_predictor(PredictionCase::kIIa, same, SurvivalCopula::product(3), m);
  EXPECT_EQ(code_of([&] { never.survival({0.2, std::nullopt}, 0.5); }), ErrorCode::kZeroAlpha);
  const ConditionalPredictor three = make_predictor(PredictionCase::kIII, order_triple(), SurvivalCopula::product(3), m);
  EXPECT_EQ(code_of([&] { three.survival({0.2, std::nullopt}, 0.5); }), ErrorCode::kWrongCase);
  EXPECT_EQ(code_of([&] { three.survival({0.5, 0.2}, 0.9); }), ErrorCode::kOutOfRange);
  EXPECT_EQ(code_of([&] { three.alpha(0.3); }), ErrorCode::kWrongCase);
}
