#include "syspredict/numerics.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "syspredict/error.hpp"

namespace syspredict::numerics {

BisectionResult bisect(const std::function<bool(double)>& below, double lo, double hi,
                       double rel_tol, double abs_tol, int max_iterations) {
  int it = 0;
  while (it < max_iterations) {
    const double width = hi - lo;
    if (width <= abs_tol || width <= rel_tol * std::abs(hi)) break;
    const double mid = lo + 0.5 * width;
    if (mid <= lo || mid >= hi) break;
    (below(mid) ? lo : hi) = mid;
    ++it;
  }
  return {lo, hi, it};
}

double integrate(const std::function<double(double)>& f, double a, double b, double rel_tol) {
  if (a == b) return 0.0;
  auto accepted = [](double value, double error) {
    return std::isfinite(value) && error <= 1e-8 * std::abs(value) + 1e-14;
  };
  // integrands here are smooth inside (a, b) but often singular at an endpoint
  boost::math::quadrature::tanh_sinh<double> ts;
  double ts_error = std::numeric_limits<double>::infinity();
  double l1 = 0.0;
  double ts_value = std::numeric_limits<double>::quiet_NaN();
  try {
    ts_value = ts.integrate(f, a, b, rel_tol, &ts_error, &l1);
  } catch (const std::exception&) {
  }
  if (accepted(ts_value, ts_error)) return ts_value;

  double error = 0.0;
  const double value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
      f, a, b, 30, rel_tol, &error, &l1);
  if (accepted(value, error)) return value;
  char buf[160];
  std::snprintf(buf, sizeof buf, "error estimate %.3g for integral %.10g over [%.3g, %.3g]",
                std::min(error, ts_error), value, a, b);
  throw Error(ErrorCode::kQuadratureFailure, buf);
}

namespace {

// Continued fraction for I_x(a,b), modified Lentz; converges for x < (a+1)/(a+b+2).
double beta_fraction(double x, double a, double b) {
  constexpr double kTiny = 1e-300;
  constexpr double kEps = 1e-16;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= 10000; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) return h;
  }
  throw Error(ErrorCode::kNotInvertible, "incomplete beta continued fraction did not converge");
}

}  // namespace

double incomplete_beta(double x, double a, double b) {
  if (!(a > 0.0 && b > 0.0)) throw Error(ErrorCode::kInvalidParameter, "beta parameters must be positive");
  if (!(x >= 0.0 && x <= 1.0)) throw Error(ErrorCode::kOutOfRange, "incomplete beta argument");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                           a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_fraction(x, a, b) / a;
  return 1.0 - front * beta_fraction(1.0 - x, b, a) / b;
}

double incomplete_beta_inverse(double p, double a, double b, double tol) {
  if (!(p > 0.0 && p < 1.0)) throw Error(ErrorCode::kOutOfRange, "beta quantile level");
  const auto r = bisect([&](double x) { return incomplete_beta(x, a, b) < p; }, 0.0, 1.0, 0.0, tol);
  return 0.5 * (r.lo + r.hi);
}

double compensated_sum(std::span<const double> values) {
  double sum = 0.0;
  double carry = 0.0;
  for (double v : values) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      carry += (sum - t) + v;
    } else {
      carry += (v - t) + sum;
    }
    sum = t;
  }
  return sum + carry;
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return std::round(r);
}

}  // namespace syspredict::numerics
