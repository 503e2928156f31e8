#pragma once

#include <functional>
#include <span>

namespace syspredict::numerics {

struct BisectionResult {
  double lo;
  double hi;
  int iterations;
};

/// Shrinks [lo, hi] around the switch point of a monotone predicate, where
/// below(lo) is true and below(hi) is false. Stops when hi - lo is below
/// rel_tol * hi (or abs_tol) or after max_iterations.
BisectionResult bisect(const std::function<bool(double)>& below, double lo, double hi,
                       double rel_tol = 1e-12, double abs_tol = 0.0, int max_iterations = 200);

/// Adaptive Gauss–Kronrod (7/15) over [a, b]. Throws QuadratureFailure when
/// the error estimate stays above rel_tol * |integral|.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol = 1e-10);

/// Regularized incomplete beta I_x(a, b), Lentz continued fraction.
double incomplete_beta(double x, double a, double b);

/// Solves I_x(a, b) = p for x by bisection to |Δx| < tol.
double incomplete_beta_inverse(double p, double a, double b, double tol = 1e-13);

/// Neumaier-compensated sum, evaluated in index order.
double compensated_sum(std::span<const double> values);

/// Binomial coefficient as a double.
double binomial(int n, int k);

}  // namespace syspredict::numerics
