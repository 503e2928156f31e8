#pragma once

#include <array>
#include <span>
#include <vector>

#include "syspredict/copula.hpp"
#include "syspredict/structure.hpp"

namespace syspredict {

/// Upper bound on merged-or-not terms a distortion build may enumerate.
inline constexpr std::size_t kMaxDistortionTerms = std::size_t{1} << 20;

/// One signed copula slice: coordinates in vars[0] carry u, vars[1] carry v,
/// vars[2] carry w, all other coordinates are fixed at 1.
struct SliceTerm {
  int coeff;
  std::array<ComponentSet, 3> vars;

  friend bool operator==(const SliceTerm&, const SliceTerm&) = default;
};

/// Signed sum of copula slices Σ coeff·Ĉ(slice) together with its partials.
/// A partial with respect to a set of variables expands by the chain rule into
/// copula partials over every coordinate carrying those variables.
class SliceSum {
 public:
  SliceSum(SurvivalCopula copula, std::vector<SliceTerm> terms);

  const std::vector<SliceTerm>& terms() const noexcept { return terms_; }
  const SurvivalCopula& copula() const noexcept { return copula_; }

  double eval(std::array<double, 3> x) const;
  /// vars: bit 0 = u, bit 1 = v, bit 2 = w.
  double partial(unsigned vars, std::array<double, 3> x) const;

 private:
  SurvivalCopula copula_;
  std::vector<SliceTerm> terms_;
};

/// q̄ with F̄_T(t) = q̄(F̄(t)).
class UnivariateDistortion {
 public:
  double operator()(double u) const { return terms_.eval({u, 1.0, 1.0}); }
  double derivative(double u) const { return terms_.partial(0b001, {u, 1.0, 1.0}); }
  const SliceSum& terms() const noexcept { return terms_; }

 private:
  friend UnivariateDistortion build_univariate(const SystemStructure&, const SurvivalCopula&);
  explicit UnivariateDistortion(SliceSum terms) : terms_(std::move(terms)) {}
  SliceSum terms_;
};

UnivariateDistortion build_univariate(const SystemStructure& s, const SurvivalCopula& c);

enum class Ordering { kStrict, kWeak };

/// Which closed form of D̂ to use on the diagonal u = v.
enum class Side { kAuto, kBelowDiagonal, kAboveDiagonal };

/// D̂ with Pr(T1 > x, T > y) = D̂(F̄(x), F̄(y)). Below the diagonal (v ≤ u,
/// i.e. x ≤ y) it is the double inclusion–exclusion over both structures;
/// above it, D̂(u, v) = q̄_{T1}(u).
class BivariateDistortion {
 public:
  double operator()(double u, double v) const;

  /// ∂1 D̂(u, v). kAuto picks the branch from the arguments (the v ≤ u form on
  /// the diagonal). An explicit side contradicting a strict inequality throws
  /// RegionError.
  double d1(double u, double v, Side side = Side::kAuto) const;
  /// lim_{v→0+} ∂1 D̂(u, v), taken term by term.
  double d1_at_zero_plus(double u) const;
  double d12(double u, double v) const;

  Ordering ordering() const noexcept { return ordering_; }
  const SliceSum& below_diagonal() const noexcept { return below_; }
  const UnivariateDistortion& first_failure() const noexcept { return first_; }

 private:
  friend BivariateDistortion build_bivariate(const SystemStructure&, const SystemStructure&,
                                             const SurvivalCopula&, Ordering);
  BivariateDistortion(SliceSum below, UnivariateDistortion first, Ordering ordering)
      : below_(std::move(below)), first_(std::move(first)), ordering_(ordering) {}

  SliceSum below_;
  UnivariateDistortion first_;
  Ordering ordering_;
};

/// The caller asserts T1 < T (strict) or T1 ≤ T (weak); structures alone do
/// not decide this, see verify_ordering in montecarlo.
BivariateDistortion build_bivariate(const SystemStructure& t1, const SystemStructure& t,
                                    const SurvivalCopula& c, Ordering ordering);

/// D̂ with Pr(T1 > t1, T2 > t2, T > t) = D̂(F̄(t1), F̄(t2), F̄(t)) on
/// t1 ≤ t2 ≤ t (u ≥ v ≥ w), assuming T1 < T2 < T almost surely. The
/// boundary slice D̂(u, v, 1) is the bivariate distortion of (T1, T2).
class TrivariateDistortion {
 public:
  double operator()(double u, double v, double w) const;
  double boundary(double u, double v) const;

  double d12(double u, double v, double w) const;
  double d12_at_zero_plus(double u, double v) const;
  double d12_boundary(double u, double v) const;
  double d123(double u, double v, double w) const;

  const SliceSum& ordered() const noexcept { return ordered_; }
  const BivariateDistortion& first_pair() const noexcept { return pair_; }

 private:
  friend TrivariateDistortion build_trivariate(const SystemStructure&, const SystemStructure&,
                                               const SystemStructure&, const SurvivalCopula&);
  TrivariateDistortion(SliceSum ordered, BivariateDistortion pair)
      : ordered_(std::move(ordered)), pair_(std::move(pair)) {}

  SliceSum ordered_;
  BivariateDistortion pair_;
};

TrivariateDistortion build_trivariate(const SystemStructure& t1, const SystemStructure& t2,
                                      const SystemStructure& t, const SurvivalCopula& c);

}  // namespace syspredict
