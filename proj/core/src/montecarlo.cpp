#include "syspredict/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "syspredict/error.hpp"
#include "syspredict/numerics.hpp"
#include "syspredict/parallel.hpp"

namespace syspredict {

double fgm_conditional_inverse(double theta, std::span<const double> prior_levels, double w) {
  // conditional CDF z + a z (1 - z) = w with a = θ Π(1 - 2 v_i); smaller root,
  // rationalized so that a = 0 gives z = w exactly
  double a = theta;
  for (double v : prior_levels) a *= 1.0 - 2.0 * v;
  const double p = 1.0 + a;
  return 2.0 * w / (p + std::sqrt(p * p - 4.0 * a * w));
}

double clayton_conditional_inverse(double theta, double first_level, double w) {
  // ∂_a K(a, b) = w  ⇔  b^-θ = 1 + a^-θ (w^{-θ/(1+θ)} - 1)
  const double g = std::pow(w, -theta / (1.0 + theta)) - 1.0;
  return std::pow(1.0 + std::pow(first_level, -theta) * g, -1.0 / theta);
}

void sample_levels(const SurvivalCopula& c, RandomStream& rng, std::span<double> out) {
  const int n = c.dimension();
  if (out.size() != static_cast<std::size_t>(n)) {
    throw Error(ErrorCode::kDimensionMismatch, "output size does not match copula dimension");
  }
  switch (c.family()) {
    case CopulaFamily::kProduct:
      for (double& v : out) v = rng.uniform();
      return;
    case CopulaFamily::kFgm: {
      for (int i = 0; i + 1 < n; ++i) out[i] = rng.uniform();
      out[n - 1] = fgm_conditional_inverse(c.theta(), out.first(n - 1), rng.uniform());
      return;
    }
    case CopulaFamily::kClaytonPair: {
      const auto [j, k] = c.pair();
      for (int i = 0; i < n; ++i) out[i] = rng.uniform();
      out[k - 1] = clayton_conditional_inverse(c.theta(), out[j - 1], out[k - 1]);
      return;
    }
    case CopulaFamily::kCustom:
      sample_levels_numeric(c, rng, out);
      return;
  }
}

void sample_levels_numeric(const SurvivalCopula& c, RandomStream& rng, std::span<double> out) {
  const int n = c.dimension();
  if (out.size() != static_cast<std::size_t>(n)) {
    throw Error(ErrorCode::kDimensionMismatch, "output size does not match copula dimension");
  }
  if (n - 1 > std::min(3, c.model().max_partial_order())) {
    throw Error(ErrorCode::kUnsupportedCopula,
                "numeric conditional inversion needs partials of order " + std::to_string(n - 1));
  }
  std::vector<double> point(static_cast<std::size_t>(n), 1.0);
  for (int k = 0; k < n; ++k) {
    const double w = rng.uniform();
    const ComponentSet given = (ComponentSet{1} << k) - 1;
    auto cdf = [&](double x) {
      point[k] = x;
      return given == 0 ? c.model().eval(point) : c.model().partial(given, point);
    };
    const double total = cdf(1.0);
    if (!(total > 0.0)) {
      throw Error(ErrorCode::kUnsupportedCopula, "conditional density vanished during sampling");
    }
    const auto r = numerics::bisect([&](double x) { return cdf(x) < w * total; }, 0.0, 1.0, 0.0, 1e-12);
    point[k] = 0.5 * (r.lo + r.hi);
    out[k] = point[k];
  }
}

std::vector<double> sample_components(const SurvivalCopula& c, const Marginal& m, RandomStream& rng) {
  std::vector<double> x(static_cast<std::size_t>(c.dimension()));
  sample_levels(c, rng, x);
  for (double& v : x) v = m.inv_sf(v);
  return x;
}

SampleSet simulate(std::span<const SystemStructure> structures, const SurvivalCopula& c,
                   const Marginal& m, std::size_t size, std::uint64_t seed) {
  if (structures.size() != 2 && structures.size() != 3) {
    throw Error(ErrorCode::kInvalidParameter, "simulate needs structures T1, [T2,] T");
  }
  if (size == 0) throw Error(ErrorCode::kInvalidParameter, "sample size must be positive");
  for (const SystemStructure& s : structures) {
    if (s.n() != c.dimension()) {
      throw Error(ErrorCode::kDimensionMismatch, "structure and copula dimensions differ");
    }
  }
  const int n = c.dimension();
  SampleSet out;
  out.n = n;
  out.seed = seed;
  out.copula = c.name();
  out.marginal = m.describe();
  out.components.resize(size * static_cast<std::size_t>(n));
  out.t1.resize(size);
  out.t.resize(size);
  const bool triple = structures.size() == 3;
  if (triple) out.t2.resize(size);

  parallel_for(size, [&](std::size_t r) {
    RandomStream rng(seed, r);
    const std::span<double> row(out.components.data() + r * static_cast<std::size_t>(n),
                                static_cast<std::size_t>(n));
    sample_levels(c, rng, row);
    for (double& v : row) v = m.inv_sf(v);
    out.t1[r] = structures[0].lifetime(row);
    if (triple) out.t2[r] = structures[1].lifetime(row);
    out.t[r] = structures.back().lifetime(row);
  });
  return out;
}

OrderingReport verify_ordering(const SampleSet& s, Ordering mode) {
  OrderingReport report;
  report.rows = s.size();
  auto ok = [mode](double a, double b) { return mode == Ordering::kStrict ? a < b : a <= b; };
  for (std::size_t i = 0; i < s.size(); ++i) {
    const bool good = s.has_second() ? ok(s.t1[i], s.t2[i]) && ok(s.t2[i], s.t[i]) : ok(s.t1[i], s.t[i]);
    if (!good) ++report.violations;
  }
  report.fraction = report.rows ? static_cast<double>(report.violations) / report.rows : 0.0;
  return report;
}

double tie_fraction(const SampleSet& s) {
  if (s.size() == 0) return 0.0;
  std::size_t ties = 0;
  for (std::size_t i = 0; i < s.size(); ++i) ties += s.t1[i] == s.t[i];
  return static_cast<double>(ties) / static_cast<double>(s.size());
}

ConditionalCheck empirical_conditional_check(const SampleSet& s, const ConditionalPredictor& p,
                                             const ConditionBin& bin, std::span<const double> y_grid,
                                             std::size_t min_rows) {
  const bool two = p.kind() == PredictionCase::kIII;
  if (two && (!s.has_second() || !bin.second_lo || !bin.second_hi)) {
    throw Error(ErrorCode::kWrongCase, "Case III check needs T2 in the sample and a T2 bin");
  }
  std::vector<double> selected;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s.t1[i] < bin.lo || s.t1[i] > bin.hi) continue;
    if (two && (s.t2[i] < *bin.second_lo || s.t2[i] > *bin.second_hi)) continue;
    if (p.kind() == PredictionCase::kIIa && !(s.t[i] > s.t1[i])) continue;
    selected.push_back(s.t[i]);
  }
  if (selected.size() < min_rows) {
    throw Error(ErrorCode::kInsufficientBinCount,
                std::to_string(selected.size()) + " rows in bin, need " + std::to_string(min_rows));
  }
  std::sort(selected.begin(), selected.end());
  Condition centre{0.5 * (bin.lo + bin.hi), std::nullopt};
  if (two) centre.second = 0.5 * (*bin.second_lo + *bin.second_hi);

  ConditionalCheck out;
  out.rows = selected.size();
  const double count = static_cast<double>(selected.size());
  for (double y : y_grid) {
    const auto above = selected.end() - std::upper_bound(selected.begin(), selected.end(), y);
    const double empirical = static_cast<double>(above) / count;
    out.max_deviation = std::max(out.max_deviation, std::abs(empirical - p.survival(centre, y)));
  }
  return out;
}

namespace {

struct Tally {
  double inside50;
  double inside90;
};

double sample_sd(std::span<const double> v, double mean) {
  if (v.size() < 2) return 0.0;
  std::vector<double> sq(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) sq[i] = (v[i] - mean) * (v[i] - mean);
  return std::sqrt(numerics::compensated_sum(sq) / static_cast<double>(v.size() - 1));
}

}  // namespace

CoverageReport coverage_experiment(const CoverageOptions& options) {
  if (options.k < 1) throw Error(ErrorCode::kInvalidK, "k must be at least 1");
  if (options.replications < 1) throw Error(ErrorCode::kInvalidParameter, "replications must be positive");
  if (options.protocol == CoverageProtocol::kFreshSystems && options.eval_draws < 1) {
    throw Error(ErrorCode::kInvalidParameter, "eval_draws must be positive");
  }
  const SurvivalCopula copula = SurvivalCopula::product(3);
  const Marginal truth = Marginal::exponential(1.0);
  const std::vector<SystemStructure> structures{SystemStructure::series(3),
                                                SystemStructure::validate(3, {{1}, {2, 3}})};
  const ConditionalPredictor base = make_predictor(PredictionCase::kI, structures, copula, truth);

  const auto reps = static_cast<std::size_t>(options.replications);
  std::vector<double> frac50(reps);
  std::vector<double> frac90(reps);
  parallel_for(reps, [&](std::size_t r) {
    RandomStream rng(options.seed, r);
    auto draw = [&] {
      const std::vector<double> x = sample_components(copula, truth, rng);
      return std::pair{structures[0].lifetime(x), structures[1].lifetime(x)};
    };
    std::vector<std::pair<double, double>> systems(static_cast<std::size_t>(options.k));
    std::vector<double> firsts(systems.size());
    for (std::size_t i = 0; i < systems.size(); ++i) {
      systems[i] = draw();
      firsts[i] = systems[i].first;
    }
    const double mu = options.known_mean
                          ? 1.0
                          : 3.0 * numerics::compensated_sum(firsts) / static_cast<double>(options.k);
    if (options.protocol == CoverageProtocol::kFreshSystems) {
      systems.resize(static_cast<std::size_t>(options.eval_draws));
      for (auto& s : systems) s = draw();
    }
    const ConditionalPredictor p = base.with_marginal(Marginal::exponential(mu));
    Tally tally{0.0, 0.0};
    for (const auto& [t1, t] : systems) {
      const Condition c{t1, std::nullopt};
      const Interval i50 = p.band(c, BandKind::kCentered, 0.5);
      const Interval i90 = p.band(c, BandKind::kCentered, 0.9);
      tally.inside50 += (t >= i50.lower && t <= i50.upper) ? 1.0 : 0.0;
      tally.inside90 += (t >= i90.lower && t <= i90.upper) ? 1.0 : 0.0;
    }
    frac50[r] = tally.inside50 / static_cast<double>(systems.size());
    frac90[r] = tally.inside90 / static_cast<double>(systems.size());
  });

  CoverageReport report;
  report.k = options.k;
  report.replications = options.replications;
  const double scale = 1.0 / static_cast<double>(reps);
  report.coverage50 = numerics::compensated_sum(frac50) * scale;
  report.coverage90 = numerics::compensated_sum(frac90) * scale;
  report.se50 = sample_sd(frac50, report.coverage50) * std::sqrt(scale);
  report.se90 = sample_sd(frac90, report.coverage90) * std::sqrt(scale);
  return report;
}

}  // namespace syspredict
