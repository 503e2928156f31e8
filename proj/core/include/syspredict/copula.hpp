#pragma once

#include <array>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "syspredict/structure.hpp"

namespace syspredict {

enum class CopulaFamily { kProduct, kFgm, kClaytonPair, kCustom };

/// Extension point for survival copulas. Implementations must provide exact
/// evaluation and mixed partials over distinct coordinates (bitmask, bit i is
/// coordinate i+1) of order 1..max_partial_order(). Points on the boundary of
/// [0,1]^n get the continuous extension from the interior.
class CopulaModel {
 public:
  virtual ~CopulaModel() = default;

  virtual int dimension() const noexcept = 0;
  virtual std::string name() const = 0;
  virtual double eval(std::span<const double> u) const = 0;
  virtual double partial(ComponentSet coords, std::span<const double> u) const = 0;
  virtual int max_partial_order() const noexcept { return 3; }
};

/// Survival copula Ĉ. A cheap-to-copy handle around an immutable model.
class SurvivalCopula {
 public:
  static SurvivalCopula product(int n);
  /// Ĉ(u) = Πu_i + θ Π u_i(1-u_i), θ ∈ [-1, 1], n ≥ 2.
  static SurvivalCopula fgm(int n, double theta);
  /// Components j,k (1-based) coupled by a Clayton survival pair with
  /// parameter θ > 0, all other components independent.
  static SurvivalCopula clayton_pair(int n, int j, int k, double theta = 1.0);
  static SurvivalCopula custom(std::shared_ptr<const CopulaModel> model,
                               CopulaFamily family = CopulaFamily::kCustom, double theta = 0.0,
                               std::array<int, 2> pair = {0, 0});

  CopulaFamily family() const noexcept { return family_; }
  int dimension() const noexcept { return model_->dimension(); }
  double theta() const noexcept { return theta_; }
  /// 1-based dependent pair of a ClaytonPair copula, {0,0} otherwise.
  std::array<int, 2> pair() const noexcept { return pair_; }
  std::string name() const { return model_->name(); }
  const CopulaModel& model() const noexcept { return *model_; }

  /// Ĉ(u). Throws OutOfUnitInterval for coordinates outside [0,1].
  double eval(std::span<const double> u) const;

  /// Analytic mixed partial with respect to 1..3 distinct 1-based coordinates.
  double partial(std::span<const int> indices, std::span<const double> u) const;
  double partial(ComponentSet coords, std::span<const double> u) const;

 private:
  SurvivalCopula(std::shared_ptr<const CopulaModel> model, CopulaFamily family, double theta,
                 std::array<int, 2> pair)
      : model_(std::move(model)), family_(family), theta_(theta), pair_(pair) {}

  std::shared_ptr<const CopulaModel> model_;
  CopulaFamily family_;
  double theta_;
  std::array<int, 2> pair_;
};

/// Variable carried by a coordinate of a copula slice.
enum class Slot : unsigned char { kU = 0, kV = 1, kW = 2, kOne = 3 };

/// Ĉ restricted to a coordinate assignment, e.g. Ĉ_{P,P*}(u,v) = Ĉ((u,v)_{P,P*}).
class CopulaSlice {
 public:
  CopulaSlice(SurvivalCopula copula, std::vector<Slot> assignment);

  double operator()(double u, double v = 1.0, double w = 1.0) const;

  const std::vector<Slot>& assignment() const noexcept { return assignment_; }

 private:
  SurvivalCopula copula_;
  std::vector<Slot> assignment_;
};

/// Throws IncompleteAssignment unless the assignment covers every coordinate.
CopulaSlice slice(const SurvivalCopula& c, std::vector<Slot> assignment);

/// Central finite-difference approximation of the mixed partial over the
/// given 1-based coordinates: (2h)^-k Σ_{s∈{±1}^k} (Πs) Ĉ(u + h Σ s_i e_i).
/// Throws BoundaryTooClose if a differentiated coordinate is within h of 0 or 1.
double fd_partial_oracle(const SurvivalCopula& c, std::span<const int> indices,
                         std::span<const double> u, double h);

}  // namespace syspredict
