#include "syspredict/predictor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "syspredict/error.hpp"
#include "syspredict/numerics.hpp"
#include "syspredict/parallel.hpp"

namespace syspredict {

namespace {

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

void require_level(double w, const char* what) {
  if (!(w > 0.0 && w < 1.0)) {
    throw Error(ErrorCode::kOutOfRange, std::string(what) + " must lie in (0,1), got " +
                                            std::to_string(w));
  }
}

}  // namespace

ConditionalPredictor::ConditionalPredictor(PredictionCase kind, BivariateDistortion d, Marginal m)
    : kind_(kind), distortion_(std::move(d)), marginal_(m) {
  if (kind == PredictionCase::kIII) {
    throw Error(ErrorCode::kWrongCase, "Case III needs a trivariate distortion");
  }
}

ConditionalPredictor::ConditionalPredictor(TrivariateDistortion d, Marginal m)
    : kind_(PredictionCase::kIII), distortion_(std::move(d)), marginal_(m) {}

ConditionalPredictor ConditionalPredictor::with_marginal(Marginal m) const {
  ConditionalPredictor copy = *this;
  copy.marginal_ = m;
  return copy;
}

double ConditionalPredictor::conditioning_time(const Condition& c) const {
  if (kind_ != PredictionCase::kIII) return c.first;
  if (!c.second) throw Error(ErrorCode::kWrongCase, "Case III needs two conditioning times");
  return *c.second;
}

ConditionalPredictor::Levels ConditionalPredictor::levels(const Condition& c) const {
  Levels l{};
  if (kind_ == PredictionCase::kIII) {
    if (!c.second) throw Error(ErrorCode::kWrongCase, "Case III needs two conditioning times");
    if (!(c.first <= *c.second)) {
      throw Error(ErrorCode::kOutOfRange, "Case III needs t1 <= t2");
    }
    const auto& d = std::get<TrivariateDistortion>(distortion_);
    l.first = marginal_.sf(c.first);
    l.second = marginal_.sf(*c.second);
    l.denom = d.d12_boundary(l.first, l.second);
    l.offset = d.d12_at_zero_plus(l.first, l.second);
  } else {
    const auto& d = std::get<BivariateDistortion>(distortion_);
    l.first = marginal_.sf(c.first);
    l.second = l.first;
    l.denom = d.first_failure().derivative(l.first);
    l.offset = d.d1_at_zero_plus(l.first);
  }
  if (!(l.denom > 0.0) || !std::isfinite(l.denom)) {
    throw Error(ErrorCode::kDegenerateDenominator,
                "conditioning density vanishes at the given time (F̄ = " +
                    std::to_string(l.first) + ")");
  }
  return l;
}

double ConditionalPredictor::core(const Levels& l, double z) const {
  if (kind_ == PredictionCase::kIII) {
    const auto& d = std::get<TrivariateDistortion>(distortion_);
    return (d.d12(l.first, l.second, z) - l.offset) / l.denom;
  }
  const auto& d = std::get<BivariateDistortion>(distortion_);
  const double g = (d.d1(l.first, z, Side::kBelowDiagonal) - l.offset) / l.denom;
  if (kind_ != PredictionCase::kIIa) return g;
  const double a = (d.d1(l.first, l.first, Side::kBelowDiagonal) - l.offset) / l.denom;
  if (!(a > 0.0)) throw Error(ErrorCode::kZeroAlpha, "Pr(T > t | T1 = t) is zero");
  return g / a;
}

double ConditionalPredictor::alpha(double t) const {
  if (kind_ == PredictionCase::kIII) throw Error(ErrorCode::kWrongCase, "alpha is defined for Cases I and II");
  const Levels l = levels({t, std::nullopt});
  const auto& d = std::get<BivariateDistortion>(distortion_);
  return clamp01((d.d1(l.first, l.first, Side::kBelowDiagonal) - l.offset) / l.denom);
}

double ConditionalPredictor::survival_at_level(const Condition& c, double z) const {
  const Levels l = levels(c);
  if (z >= l.second) return 1.0;
  if (!(z >= 0.0)) throw Error(ErrorCode::kOutOfUnitInterval, "survival level " + std::to_string(z));
  return clamp01(core(l, z));
}

double ConditionalPredictor::survival(const Condition& c, double y) const {
  const double tc = conditioning_time(c);
  const Levels l = levels(c);
  if (y <= tc) return 1.0;
  const double z = std::min(marginal_.sf(y), l.second);
  return clamp01(core(l, z));
}

double ConditionalPredictor::quantile(double w, const Condition& c) const {
  require_level(w, "quantile level");
  const double tc = conditioning_time(c);
  const Levels l = levels(c);
  const double top_level = l.second;

  if (closed_form_ && closed_form_enabled_) {
    const double both[2] = {l.first, l.second};
    const std::span<const double> given(both, kind_ == PredictionCase::kIII ? 2 : 1);
    const double z = closed_form_(w, given);
    if (z >= top_level) return tc;
    if (!(z > 0.0)) throw Error(ErrorCode::kNotInvertible, "closed-form quantile left (0, F̄(t))");
    return marginal_.inv_sf(z);
  }

  // survival just above the conditioning time: α(t) in Case IIb, 1 otherwise
  const double top = kind_ == PredictionCase::kIIb ? clamp01(core(l, top_level)) : 1.0;
  if (top <= w) return tc;
  if (core(l, 0.0) > w) {
    throw Error(ErrorCode::kNotInvertible, "conditional survival stays above the requested level");
  }
  const auto r = numerics::bisect([&](double z) { return core(l, z) <= w; }, 0.0, top_level);
  const double z = 0.5 * (r.lo + r.hi);
  if (!(z > 0.0)) throw Error(ErrorCode::kNotInvertible, "quantile level collapsed to zero");
  return marginal_.inv_sf(z);
}

double ConditionalPredictor::mean(const Condition& c) const {
  const double tc = conditioning_time(c);
  const Levels l = levels(c);
  // time domain: in z the integrand is often singular where F̄ rounds to 1
  const double tail = numerics::integrate(
      [&](double y) { return clamp01(core(l, std::min(marginal_.sf(y), l.second))); }, tc,
      std::numeric_limits<double>::infinity());
  return tc + tail;
}

Interval ConditionalPredictor::band(const Condition& c, BandKind kind, double level) const {
  require_level(level, "band level");
  if (kind == BandKind::kBottom) return {conditioning_time(c), quantile(1.0 - level, c)};
  return {quantile(0.5 * (1.0 + level), c), quantile(0.5 * (1.0 - level), c)};
}

Interval PredictionBand::at(const ConditionalPredictor& p, const Condition& c) const {
  return p.band(c, kind, level);
}

namespace {

void require_case(const ConditionalPredictor& p, PredictionCase kind, const char* name) {
  if (p.kind() != kind) throw Error(ErrorCode::kWrongCase, std::string(name) + " on a predictor of another case");
}

}  // namespace

double survival_case1(const ConditionalPredictor& p, double t, double y) {
  require_case(p, PredictionCase::kI, "survival_case1");
  return p.survival({t, std::nullopt}, y);
}

double survival_case2a(const ConditionalPredictor& p, double t, double y) {
  require_case(p, PredictionCase::kIIa, "survival_case2a");
  return p.survival({t, std::nullopt}, y);
}

double survival_case2b(const ConditionalPredictor& p, double t, double y) {
  require_case(p, PredictionCase::kIIb, "survival_case2b");
  return p.survival({t, std::nullopt}, y);
}

double survival_case3(const ConditionalPredictor& p, double t1, double t2, double t) {
  require_case(p, PredictionCase::kIII, "survival_case3");
  return p.survival({t1, t2}, t);
}

std::vector<CurveRow> prediction_curves(const ConditionalPredictor& p,
                                        std::span<const Condition> grid, BandKind kind) {
  std::vector<CurveRow> rows(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) {
    const Condition& c = grid[i];
    const Interval b50 = p.band(c, kind, 0.5);
    const Interval b90 = p.band(c, kind, 0.9);
    rows[i] = {p.conditioning_time(c), p.median(c), p.mean(c), b50.lower, b50.upper, b90.lower,
               b90.upper};
  });
  return rows;
}

std::vector<double> median_curve(const ConditionalPredictor& p, std::span<const Condition> grid) {
  std::vector<double> out(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) { out[i] = p.median(grid[i]); });
  return out;
}

std::vector<double> mean_curve(const ConditionalPredictor& p, std::span<const Condition> grid) {
  std::vector<double> out(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) { out[i] = p.mean(grid[i]); });
  return out;
}

double system_mean(const SystemStructure& s, const SurvivalCopula& c, const Marginal& m) {
  const UnivariateDistortion q = build_univariate(s, c);
  return numerics::integrate([&](double t) { return q(m.sf(t)); }, 0.0,
                             std::numeric_limits<double>::infinity());
}

namespace {

void require_order(int n, int r, int s) {
  if (!(1 <= r && r < s && s <= n)) {
    throw Error(ErrorCode::kInvalidOrder, "need 1 <= r < s <= n, got n=" + std::to_string(n) +
                                              " r=" + std::to_string(r) + " s=" + std::to_string(s));
  }
}

}  // namespace

double kofn_quantile_factor(int n, int r, int s, double w) {
  require_order(n, r, s);
  require_level(w, "quantile level");
  return numerics::incomplete_beta_inverse(w, n - s + 1.0, static_cast<double>(s - r), 1e-13);
}

double kofn_survival(int n, int r, int s, double t, double y, const Marginal& m) {
  require_order(n, r, s);
  if (y < t) throw Error(ErrorCode::kOutOfRange, "kofn_survival needs y >= t");
  const double base = m.sf(t);
  if (!(base > 0.0)) throw Error(ErrorCode::kDegenerateDenominator, "F̄(t) = 0");
  const double rho = std::min(1.0, m.sf(y) / base);
  const int remaining = n - r;
  double sum = 0.0;
  for (int j = 0; j < s - r; ++j) {
    sum += numerics::binomial(remaining, j) * std::pow(1.0 - rho, j) * std::pow(rho, remaining - j);
  }
  return clamp01(sum);
}

namespace {

bool same_paths(const SystemStructure& s, int n, const std::vector<std::vector<int>>& paths) {
  return s.n() == n && s == SystemStructure::validate(n, paths);
}

bool is_order_statistic(const SystemStructure& s, int k, int n) {
  return s.n() == n && s == SystemStructure::order_statistic(k, n);
}

}  // namespace

std::optional<SurvivalQuantileFn> find_closed_form(PredictionCase kind,
                                                   std::span<const SystemStructure> structures,
                                                   const SurvivalCopula& c) {
  const bool product = c.family() == CopulaFamily::kProduct;
  if (kind != PredictionCase::kIII && structures.size() == 2 && structures[0].n() == 3 &&
      is_order_statistic(structures[0], 1, 3) && product) {
    const SystemStructure& t = structures[1];
    if (kind == PredictionCase::kI && same_paths(t, 3, {{1}, {2, 3}})) {
      // F̄²(y) + 2F̄(t)F̄(y) - 3wF̄²(t) = 0
      return [](double w, std::span<const double> u) { return u[0] * (std::sqrt(1.0 + 3.0 * w) - 1.0); };
    }
    if (same_paths(t, 3, {{1, 2}, {1, 3}})) {
      if (kind == PredictionCase::kIIa) {
        return [](double w, std::span<const double> u) { return u[0] * std::sqrt(w); };
      }
      if (kind == PredictionCase::kIIb) {
        // (2/3) F̄²(y)/F̄²(t) = w, atom of mass 1/3 at y = t
        return [](double w, std::span<const double> u) {
          return w >= 2.0 / 3.0 ? u[0] : u[0] * std::sqrt(1.5 * w);
        };
      }
    }
  }
  if (kind == PredictionCase::kIII && structures.size() == 3 && structures[0].n() == 3 &&
      is_order_statistic(structures[0], 1, 3) && is_order_statistic(structures[1], 2, 3) &&
      is_order_statistic(structures[2], 3, 3)) {
    if (product) {
      return [](double w, std::span<const double> u) { return w * u[1]; };
    }
    if (c.family() == CopulaFamily::kFgm) {
      const double theta = c.theta();
      // θA z² - (1 + θA) z + wB = 0, smaller root in rationalized form
      return [theta](double w, std::span<const double> u) {
        const double ta = theta * (1.0 - 2.0 * u[0]) * (1.0 - 2.0 * u[1]);
        const double b = u[1] * (1.0 + (1.0 - u[1]) * ta);
        const double p = 1.0 + ta;
        return 2.0 * w * b / (p + std::sqrt(p * p - 4.0 * ta * w * b));
      };
    }
  }
  return std::nullopt;
}

ConditionalPredictor make_predictor(PredictionCase kind,
                                    std::span<const SystemStructure> structures,
                                    const SurvivalCopula& c, const Marginal& m) {
  std::optional<ConditionalPredictor> p;
  if (kind == PredictionCase::kIII) {
    if (structures.size() != 3) throw Error(ErrorCode::kWrongCase, "Case III needs structures T1, T2, T");
    p.emplace(build_trivariate(structures[0], structures[1], structures[2], c), m);
  } else {
    if (structures.size() != 2) throw Error(ErrorCode::kWrongCase, "Cases I/II need structures T1, T");
    const Ordering ordering = kind == PredictionCase::kI ? Ordering::kStrict : Ordering::kWeak;
    p.emplace(kind, build_bivariate(structures[0], structures[1], c, ordering), m);
  }
  if (auto fn = find_closed_form(kind, structures, c)) p->set_closed_form(std::move(*fn));
  return std::move(*p);
}

}  // namespace syspredict
