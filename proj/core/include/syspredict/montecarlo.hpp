#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "syspredict/copula.hpp"
#include "syspredict/distortion.hpp"
#include "syspredict/marginal.hpp"
#include "syspredict/predictor.hpp"
#include "syspredict/random.hpp"
#include "syspredict/structure.hpp"

namespace syspredict {

/// Draws survival levels V with joint CDF Ĉ (so X_i = F̄⁻¹(V_i) has survival
/// copula Ĉ), using the closed-form conditional inverse of the family.
void sample_levels(const SurvivalCopula& c, RandomStream& rng, std::span<double> out);

/// Same law through sequential numeric inversion of the conditional CDFs
/// ∂_{1..k-1}Ĉ(v_1..v_{k-1}, x, 1..) / ∂_{1..k-1}Ĉ(v_1..v_{k-1}, 1, ..), by
/// bisection to 1e-12. Needs copula partials of order n-1 (so n ≤ 4).
void sample_levels_numeric(const SurvivalCopula& c, RandomStream& rng, std::span<double> out);

/// Level z of the last FGM coordinate given the others' levels and a uniform w.
double fgm_conditional_inverse(double theta, std::span<const double> prior_levels, double w);
/// Level of the second Clayton pair coordinate given the first and a uniform w.
double clayton_conditional_inverse(double theta, double first_level, double w);

std::vector<double> sample_components(const SurvivalCopula& c, const Marginal& m, RandomStream& rng);

struct SampleSet {
  int n = 0;
  std::vector<double> components;  // row-major, n per row
  std::vector<double> t1;
  std::vector<double> t2;  // empty unless three structures were simulated
  std::vector<double> t;
  std::uint64_t seed = 0;
  std::string copula;
  std::string marginal;

  std::size_t size() const noexcept { return t.size(); }
  bool has_second() const noexcept { return !t2.empty(); }
  std::span<const double> row(std::size_t i) const {
    return std::span<const double>(components).subspan(i * static_cast<std::size_t>(n),
                                                       static_cast<std::size_t>(n));
  }
};

/// Row r draws components from RandomStream(seed, r) and applies each
/// structure's lifetime. structures = {T1, T} or {T1, T2, T}.
SampleSet simulate(std::span<const SystemStructure> structures, const SurvivalCopula& c,
                   const Marginal& m, std::size_t size, std::uint64_t seed);

struct OrderingReport {
  std::size_t rows = 0;
  std::size_t violations = 0;
  double fraction = 0.0;
};

/// Counts rows breaking T1 < (T2 <) T (strict) or T1 ≤ (T2 ≤) T (weak).
OrderingReport verify_ordering(const SampleSet& s, Ordering mode);

/// Fraction of rows with T = T1 exactly.
double tie_fraction(const SampleSet& s);

struct ConditionBin {
  double lo;
  double hi;
  std::optional<double> second_lo;  // Case III: bin on T2 as well
  std::optional<double> second_hi;
};

struct ConditionalCheck {
  std::size_t rows = 0;
  double max_deviation = 0.0;
};

/// Kolmogorov-style distance between the empirical survival of T among rows
/// whose conditioning times fall in the bin (and T > T1 for Case IIa) and
/// the predictor's survival at the bin centre, over y_grid. Needs ≥ 500 rows.
ConditionalCheck empirical_conditional_check(const SampleSet& s, const ConditionalPredictor& p,
                                             const ConditionBin& bin, std::span<const double> y_grid,
                                             std::size_t min_rows = 500);

enum class CoverageProtocol {
  kSameSystems,   // score the k systems that produced the estimate
  kFreshSystems,  // score eval_draws new systems per replication
};

struct CoverageOptions {
  int k = 1;
  int replications = 1000;
  int eval_draws = 100;
  std::uint64_t seed = 1;
  CoverageProtocol protocol = CoverageProtocol::kSameSystems;
  bool known_mean = false;  // use the true μ = 1 instead of μ̂ = 3·mean(T1)
};

struct CoverageReport {
  int k = 0;
  int replications = 0;
  double coverage50 = 0.0;
  double se50 = 0.0;
  double coverage90 = 0.0;
  double se90 = 0.0;
};

/// Plug-in coverage of the centred 50%/90% bands for the system
/// max(X1, min(X2, X3)) predicted from X_{1:3}, IID exponential(1) components.
CoverageReport coverage_experiment(const CoverageOptions& options);

}  // namespace syspredict
