#include <benchmark/benchmark.h>

#include <random>

#include "syspredict/distortion.hpp"
#include "syspredict/montecarlo.hpp"
#include "syspredict/predictor.hpp"
#include "syspredict/qr.hpp"

using namespace syspredict;

namespace {

std::vector<SystemStructure> bridge() {
  return {SystemStructure::series(3), SystemStructure::validate(3, {{1}, {2, 3}})};
}

void BM_BuildBivariate(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const SystemStructure first = SystemStructure::order_statistic(1, n);
  const SystemStructure last = SystemStructure::order_statistic(2, n);
  const SurvivalCopula c = SurvivalCopula::fgm(n, 0.5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_bivariate(first, last, c, Ordering::kStrict));
  }
}
BENCHMARK(BM_BuildBivariate)->DenseRange(3, 9, 2);

void BM_CopulaPartial(benchmark::State& state) {
  const SurvivalCopula c = SurvivalCopula::fgm(6, 0.7);
  const std::vector<double> point{0.2, 0.4, 0.5, 0.6, 0.7, 0.9};
  for (auto _ : state) {
    benchmark::DoNotOptimize(c.partial(0b11, point));
  }
}
BENCHMARK(BM_CopulaPartial);

void BM_Quantile(benchmark::State& state) {
  ConditionalPredictor p = make_predictor(PredictionCase::kI, bridge(), SurvivalCopula::product(3),
                                          Marginal::exponential(1.0));
  p.use_closed_form(state.range(0) != 0);
  const Condition at{0.5, std::nullopt};
  for (auto _ : state) {
    benchmark::DoNotOptimize(p.quantile(0.5, at));
  }
  state.SetLabel(state.range(0) ? "closed form" : "bisection");
}
BENCHMARK(BM_Quantile)->Arg(1)->Arg(0);

void BM_ConditionalMean(benchmark::State& state) {
  const ConditionalPredictor p = make_predictor(
      PredictionCase::kI, bridge(), SurvivalCopula::clayton_pair(3, 2, 3, 1.0), Marginal::weibull(1.5, 2.0));
  const Condition at{0.5, std::nullopt};
  for (auto _ : state) {
    benchmark::DoNotOptimize(p.mean(at));
  }
}
BENCHMARK(BM_ConditionalMean);

void BM_Simulate(benchmark::State& state) {
  const auto s = bridge();
  const SurvivalCopula c = SurvivalCopula::fgm(3, 1.0);
  const auto size = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(simulate(s, c, Marginal::exponential(1.0), size, 7));
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * size));
}
BENCHMARK(BM_Simulate)->Arg(1 << 12)->Arg(1 << 16);

void BM_FitLqr(benchmark::State& state) {
  std::mt19937_64 g(3);
  std::exponential_distribution<double> e(1.0);
  std::vector<Observation> d(static_cast<std::size_t>(state.range(0)));
  for (auto& o : d) {
    o.t = e(g);
    o.y = o.t + e(g);
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(fit_lqr(d, 0.5));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_FitLqr)->RangeMultiplier(4)->Range(16, 1024)->Complexity();

}  // namespace

BENCHMARK_MAIN();
