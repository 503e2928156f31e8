#include "syspredict/marginal.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "syspredict/error.hpp"

namespace syspredict {

namespace {

void require_time(double t) {
  if (!(t >= 0.0)) throw Error(ErrorCode::kNegativeTime, "time " + std::to_string(t));
}

}  // namespace

// Exponential with mean μ is Weibull(1, μ); both share the same code path
// with the shape-1 case special-cased for exactness.
Marginal Marginal::exponential(double mean) {
  if (!(mean > 0.0) || !std::isfinite(mean)) {
    throw Error(ErrorCode::kInvalidParameter, "exponential mean must be positive");
  }
  return Marginal(MarginalFamily::kExponential, 1.0, mean);
}

Marginal Marginal::weibull(double shape, double scale) {
  if (!(shape > 0.0) || !(scale > 0.0) || !std::isfinite(shape) || !std::isfinite(scale)) {
    throw Error(ErrorCode::kInvalidParameter, "Weibull shape and scale must be positive");
  }
  return Marginal(MarginalFamily::kWeibull, shape, scale);
}

double Marginal::mean() const { return scale_ * std::tgamma(1.0 + 1.0 / shape_); }

std::string Marginal::describe() const {
  char buf[96];
  if (family_ == MarginalFamily::kExponential) {
    std::snprintf(buf, sizeof buf, "exponential(mean=%g)", scale_);
  } else {
    std::snprintf(buf, sizeof buf, "weibull(shape=%g, scale=%g)", shape_, scale_);
  }
  return buf;
}

double Marginal::sf(double t) const {
  require_time(t);
  if (shape_ == 1.0) return std::exp(-t / scale_);
  return std::exp(-std::pow(t / scale_, shape_));
}

double Marginal::inv_sf(double p) const {
  if (!(p > 0.0 && p <= 1.0)) {
    throw Error(ErrorCode::kOutOfRange, "inverse survival argument " + std::to_string(p));
  }
  if (p == 1.0) return 0.0;
  const double h = -std::log(p);
  if (shape_ == 1.0) return scale_ * h;
  return scale_ * std::pow(h, 1.0 / shape_);
}

double Marginal::pdf(double t) const {
  require_time(t);
  if (shape_ == 1.0) return std::exp(-t / scale_) / scale_;
  if (t == 0.0) {
    return shape_ < 1.0 ? std::numeric_limits<double>::infinity() : 0.0;
  }
  const double x = t / scale_;
  return shape_ / scale_ * std::pow(x, shape_ - 1.0) * std::exp(-std::pow(x, shape_));
}

double Marginal::pdf_at_survival(double z) const {
  if (!(z > 0.0 && z <= 1.0)) {
    throw Error(ErrorCode::kOutOfRange, "survival level " + std::to_string(z));
  }
  // f(y) = (k/λ) H^{(k-1)/k} z with H = -ln z = (y/λ)^k
  if (shape_ == 1.0) return z / scale_;
  const double h = -std::log(z);
  if (h == 0.0) return pdf(0.0);
  return shape_ / scale_ * std::pow(h, (shape_ - 1.0) / shape_) * z;
}

}  // namespace syspredict
