#pragma once

#include <functional>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "syspredict/copula.hpp"
#include "syspredict/distortion.hpp"
#include "syspredict/marginal.hpp"
#include "syspredict/structure.hpp"

namespace syspredict {

/// I: T1 < T. IIa: T1 = t < T. IIb: T1 = t ≤ T (atom at T = t).
/// III: T1 = t1 < T2 = t2 < T.
enum class PredictionCase { kI, kIIa, kIIb, kIII };

/// Observed early failure times. `second` is required for Case III only.
struct Condition {
  double first = 0.0;
  std::optional<double> second;
};

/// Closed-form quantile in survival space: given w and the conditioning
/// survival levels ({F̄(t)} or {F̄(t1), F̄(t2)}), returns z with F̄(quantile) = z.
/// Returning a value ≥ the last level means "the conditioning time itself".
using SurvivalQuantileFn = std::function<double(double w, std::span<const double> levels)>;

struct Interval {
  double lower;
  double upper;
};

enum class BandKind { kCentered, kBottom };

class ConditionalPredictor;

/// Interval-valued curve t ↦ [lower(t), upper(t)].
struct PredictionBand {
  BandKind kind;
  double level;

  Interval at(const ConditionalPredictor& p, const Condition& c) const;
};

/// Conditional survival Ḡ(y | conditioning) built from a distortion and F̄.
class ConditionalPredictor {
 public:
  ConditionalPredictor(PredictionCase kind, BivariateDistortion d, Marginal m);
  ConditionalPredictor(TrivariateDistortion d, Marginal m);

  PredictionCase kind() const noexcept { return kind_; }
  const Marginal& marginal() const noexcept { return marginal_; }
  ConditionalPredictor with_marginal(Marginal m) const;

  void set_closed_form(SurvivalQuantileFn fn) { closed_form_ = std::move(fn); }
  bool has_closed_form() const noexcept { return static_cast<bool>(closed_form_); }
  /// Disables the closed-form fast path so quantiles go through bisection.
  void use_closed_form(bool enabled) noexcept { closed_form_enabled_ = enabled; }

  /// Pr(T > y | condition), dispatching on the case.
  double survival(const Condition& c, double y) const;
  /// Same function in z = F̄(y) for 0 ≤ z < F̄(conditioning time).
  double survival_at_level(const Condition& c, double z) const;
  /// α(t) = lim_{y→t+} Pr(T > y | T1 = t). Cases I and II only.
  double alpha(double t) const;

  /// inf { y ≥ conditioning time : survival(y) ≤ w }.
  double quantile(double w, const Condition& c) const;
  double median(const Condition& c) const { return quantile(0.5, c); }
  /// E(T | condition) by quadrature over z = F̄(y).
  double mean(const Condition& c) const;
  Interval band(const Condition& c, BandKind kind, double level) const;

  double conditioning_time(const Condition& c) const;

 private:
  struct Levels {
    double first;   // F̄(t) or F̄(t1)
    double second;  // F̄(t2) (Case III)
    double denom;
    double offset;  // value of the numerator at z = 0+
  };
  Levels levels(const Condition& c) const;
  double core(const Levels& l, double z) const;

  PredictionCase kind_;
  std::variant<BivariateDistortion, TrivariateDistortion> distortion_;
  Marginal marginal_;
  SurvivalQuantileFn closed_form_;
  bool closed_form_enabled_ = true;
};

double survival_case1(const ConditionalPredictor& p, double t, double y);
double survival_case2a(const ConditionalPredictor& p, double t, double y);
double survival_case2b(const ConditionalPredictor& p, double t, double y);
double survival_case3(const ConditionalPredictor& p, double t1, double t2, double t);

struct CurveRow {
  double t;
  double median;
  double mean;
  double lower_50;
  double upper_50;
  double lower_90;
  double upper_90;
};

/// Median, mean and 50%/90% bands at each conditioning point, evaluated in
/// parallel with output in grid order.
std::vector<CurveRow> prediction_curves(const ConditionalPredictor& p,
                                        std::span<const Condition> grid, BandKind kind);
std::vector<double> median_curve(const ConditionalPredictor& p, std::span<const Condition> grid);
std::vector<double> mean_curve(const ConditionalPredictor& p, std::span<const Condition> grid);

/// E(T) = ∫ q̄(F̄(t)) dt.
double system_mean(const SystemStructure& s, const SurvivalCopula& c, const Marginal& m);

/// w-quantile of Beta(n-s+1, s-r): predicting X_{s:n} from X_{r:n} = t gives
/// the w-level curve F̄⁻¹(β_w F̄(t)).
double kofn_quantile_factor(int n, int r, int s, double w);
/// Pr(X_{s:n} > y | X_{r:n} = t) for IID components.
double kofn_survival(int n, int r, int s, double t, double y, const Marginal& m);

/// Closed-form survival-space quantiles for the configurations that have one
/// (bridge and guard pairs, order-statistic triples), matched on exact path sets.
std::optional<SurvivalQuantileFn> find_closed_form(PredictionCase kind,
                                                   std::span<const SystemStructure> structures,
                                                   const SurvivalCopula& c);

/// Builds the distortion for the case, attaches a closed form when one is
/// known. structures = {T1, T} or {T1, T2, T}.
ConditionalPredictor make_predictor(PredictionCase kind,
                                    std::span<const SystemStructure> structures,
                                    const SurvivalCopula& c, const Marginal& m);

}  // namespace syspredict
