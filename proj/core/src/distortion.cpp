#include "syspredict/distortion.hpp"

#include <bit>
#include <map>
#include <string>

#include "syspredict/error.hpp"

namespace syspredict {

namespace {

using VarKey = std::array<ComponentSet, 3>;

std::vector<SliceTerm> collect(const std::map<VarKey, int>& merged) {
  std::vector<SliceTerm> out;
  for (const auto& [vars, coeff] : merged) {
    if (coeff != 0) out.push_back({coeff, vars});
  }
  return out;
}

void check_dimensions(const SurvivalCopula& c, std::initializer_list<const SystemStructure*> ss) {
  for (const SystemStructure* s : ss) {
    if (s->n() != c.dimension()) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "structure over " + std::to_string(s->n()) + " components but copula of dimension " +
                      std::to_string(c.dimension()));
    }
  }
}

void check_term_budget(std::size_t count) {
  if (count > kMaxDistortionTerms) {
    throw Error(ErrorCode::kTooManyTerms,
                std::to_string(count) + " inclusion-exclusion terms exceed the 2^20 budget");
  }
}

// Sum of the copula partials over every choice of one coordinate per
// differentiated variable (chain rule for variables shared by coordinates).
double chain_partial(const SurvivalCopula& c, const VarKey& vars, const int* var_list, int depth,
                     int count, ComponentSet chosen, std::span<const double> point) {
  if (depth == count) return c.model().partial(chosen, point);
  double sum = 0.0;
  for (ComponentSet s = vars[static_cast<std::size_t>(var_list[depth])]; s != 0; s &= s - 1) {
    sum += chain_partial(c, vars, var_list, depth + 1, count, chosen | (s & -s), point);
  }
  return sum;
}

void check_unit(std::array<double, 3> x) {
  for (double v : x) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw Error(ErrorCode::kOutOfUnitInterval, "distortion argument " + std::to_string(v));
    }
  }
}

}  // namespace

SliceSum::SliceSum(SurvivalCopula copula, std::vector<SliceTerm> terms)
    : copula_(std::move(copula)), terms_(std::move(terms)) {}

double SliceSum::eval(std::array<double, 3> x) const {
  check_unit(x);
  const int n = copula_.dimension();
  std::array<double, kMaxComponents> point{};
  double sum = 0.0;
  for (const SliceTerm& term : terms_) {
    for (int i = 0; i < n; ++i) {
      const ComponentSet bit = ComponentSet{1} << i;
      point[i] = (term.vars[0] & bit) ? x[0] : (term.vars[1] & bit) ? x[1]
                                             : (term.vars[2] & bit) ? x[2] : 1.0;
    }
    sum += term.coeff * copula_.model().eval(std::span<const double>(point.data(), n));
  }
  return sum;
}

double SliceSum::partial(unsigned vars, std::array<double, 3> x) const {
  check_unit(x);
  int var_list[3];
  int count = 0;
  for (int k = 0; k < 3; ++k) {
    if (vars >> k & 1) var_list[count++] = k;
  }
  if (count == 0 || (vars >> 3) != 0) {
    throw Error(ErrorCode::kUnsupportedOrder, "distortion partial needs 1..3 of u, v, w");
  }
  const int n = copula_.dimension();
  std::array<double, kMaxComponents> point{};
  double sum = 0.0;
  for (const SliceTerm& term : terms_) {
    bool carries_all = true;
    for (int d = 0; d < count; ++d) {
      if (term.vars[static_cast<std::size_t>(var_list[d])] == 0) carries_all = false;
    }
    if (!carries_all) continue;
    for (int i = 0; i < n; ++i) {
      const ComponentSet bit = ComponentSet{1} << i;
      point[i] = (term.vars[0] & bit) ? x[0] : (term.vars[1] & bit) ? x[1]
                                             : (term.vars[2] & bit) ? x[2] : 1.0;
    }
    sum += term.coeff * chain_partial(copula_, term.vars, var_list, 0, count, 0,
                                      std::span<const double>(point.data(), n));
  }
  return sum;
}

UnivariateDistortion build_univariate(const SystemStructure& s, const SurvivalCopula& c) {
  check_dimensions(c, {&s});
  std::map<VarKey, int> merged;
  for (const SignedTerm& t : s.inclusion_exclusion()) merged[{t.set, 0, 0}] += t.sign;
  return UnivariateDistortion(SliceSum(c, collect(merged)));
}

BivariateDistortion build_bivariate(const SystemStructure& t1, const SystemStructure& t,
                                    const SurvivalCopula& c, Ordering ordering) {
  check_dimensions(c, {&t1, &t});
  const SignedTermList first = t1.inclusion_exclusion();
  const SignedTermList system = t.inclusion_exclusion();
  check_term_budget(first.size() * system.size());

  // Pr(X_{P*} > x, X_P > y) = Ĉ(u on P* - P, v on P) for x ≤ y.
  std::map<VarKey, int> merged;
  for (const SignedTerm& p : system) {
    for (const SignedTerm& q : first) {
      merged[{q.set & ~p.set, p.set, 0}] += p.sign * q.sign;
    }
  }
  return BivariateDistortion(SliceSum(c, collect(merged)), build_univariate(t1, c), ordering);
}

double BivariateDistortion::operator()(double u, double v) const {
  if (v <= u) return below_.eval({u, v, 1.0});
  return first_(u);
}

double BivariateDistortion::d1(double u, double v, Side side) const {
  if (side == Side::kBelowDiagonal && v > u) {
    throw Error(ErrorCode::kRegionError, "below-diagonal branch requested with v > u");
  }
  if (side == Side::kAboveDiagonal && v < u) {
    throw Error(ErrorCode::kRegionError, "above-diagonal branch requested with v < u");
  }
  const bool below = side == Side::kBelowDiagonal || (side == Side::kAuto && v <= u);
  if (below) return below_.partial(0b001, {u, v, 1.0});
  return first_.derivative(u);
}

double BivariateDistortion::d1_at_zero_plus(double u) const {
  return below_.partial(0b001, {u, 0.0, 1.0});
}

double BivariateDistortion::d12(double u, double v) const {
  if (v > u) return 0.0;  // q̄_{T1}(u) does not depend on v
  return below_.partial(0b011, {u, v, 1.0});
}

TrivariateDistortion build_trivariate(const SystemStructure& t1, const SystemStructure& t2,
                                      const SystemStructure& t, const SurvivalCopula& c) {
  check_dimensions(c, {&t1, &t2, &t});
  const SignedTermList first = t1.inclusion_exclusion();
  const SignedTermList second = t2.inclusion_exclusion();
  const SignedTermList system = t.inclusion_exclusion();
  check_term_budget(first.size() * second.size() * system.size());

  // Coordinate i carries w if in P, else v if in P2, else u if in P1.
  std::map<VarKey, int> merged;
  for (const SignedTerm& p : system) {
    for (const SignedTerm& p2 : second) {
      for (const SignedTerm& p1 : first) {
        const ComponentSet w = p.set;
        const ComponentSet v = p2.set & ~w;
        const ComponentSet u = p1.set & ~(v | w);
        merged[{u, v, w}] += p.sign * p2.sign * p1.sign;
      }
    }
  }
  return TrivariateDistortion(SliceSum(c, collect(merged)),
                              build_bivariate(t1, t2, c, Ordering::kStrict));
}

namespace {

void check_ordered(double u, double v, double w) {
  if (!(u >= v && v >= w)) {
    throw Error(ErrorCode::kRegionError, "trivariate distortion needs u >= v >= w");
  }
}

}  // namespace

double TrivariateDistortion::operator()(double u, double v, double w) const {
  check_ordered(u, v, w);
  return ordered_.eval({u, v, w});
}

double TrivariateDistortion::boundary(double u, double v) const {
  if (v > u) throw Error(ErrorCode::kRegionError, "boundary slice needs u >= v");
  return pair_(u, v);
}

double TrivariateDistortion::d12(double u, double v, double w) const {
  check_ordered(u, v, w);
  return ordered_.partial(0b011, {u, v, w});
}

double TrivariateDistortion::d12_at_zero_plus(double u, double v) const {
  check_ordered(u, v, 0.0);
  return ordered_.partial(0b011, {u, v, 0.0});
}

double TrivariateDistortion::d12_boundary(double u, double v) const {
  if (v > u) throw Error(ErrorCode::kRegionError, "boundary slice needs u >= v");
  return pair_.d12(u, v);
}

double TrivariateDistortion::d123(double u, double v, double w) const {
  check_ordered(u, v, w);
  return ordered_.partial(0b111, {u, v, w});
}

}  // namespace syspredict
