#pragma once

#include <string>

namespace syspredict {

enum class MarginalFamily { kExponential, kWeibull };

/// Common component lifetime law F̄.
class Marginal {
 public:
  static Marginal exponential(double mean);
  static Marginal weibull(double shape, double scale);

  MarginalFamily family() const noexcept { return family_; }
  double shape() const noexcept { return shape_; }
  double scale() const noexcept { return scale_; }
  double mean() const;
  std::string describe() const;

  /// F̄(t); throws NegativeTime for t < 0.
  double sf(double t) const;
  /// The unique t ≥ 0 with F̄(t) = p; throws OutOfRange unless 0 < p ≤ 1.
  double inv_sf(double p) const;
  /// f(t) = -F̄'(t).
  double pdf(double t) const;
  /// f(F̄⁻¹(z)), the Jacobian used when integrating in z = F̄(y).
  double pdf_at_survival(double z) const;

 private:
  Marginal(MarginalFamily family, double shape, double scale)
      : family_(family), shape_(shape), scale_(scale) {}

  MarginalFamily family_;
  double shape_;
  double scale_;
};

}  // namespace syspredict
