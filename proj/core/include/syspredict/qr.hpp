#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace syspredict {

struct Observation {
  double t;
  double y;
};

struct FittedLine {
  double intercept = 0.0;
  double slope = 0.0;
  std::optional<double> tau;  // absent for least squares
  double loss = 0.0;

  double at(double t) const noexcept { return intercept + slope * t; }
};

/// ρ_τ(r) = r (τ - 1[r < 0]) summed over residuals y - a - b t.
double pinball_loss(std::span<const Observation> data, double tau, double intercept, double slope);

/// Exact linear quantile regression. For each pivot point the loss over lines
/// through it is convex piecewise linear in the slope, so its minimum sits at a
/// weighted quantile of the pairwise slopes; horizontal lines through each
/// point are also candidates. O(n² log n). Ties within 1e-12 relative loss go
/// to the smallest |slope|, then the smallest intercept.
FittedLine fit_lqr(std::span<const Observation> data, double tau);

/// Least squares via the centred normal equations; loss is the residual sum of squares.
FittedLine fit_ols(std::span<const Observation> data);

struct ResidualCounts {
  std::size_t below = 0;
  std::size_t zero = 0;
  std::size_t above = 0;
};

/// Residual signs with |r| ≤ tol counted as zero.
ResidualCounts residual_counts(std::span<const Observation> data, const FittedLine& line,
                               double tol = 1e-9);

struct Crossing {
  std::size_t lower;  // index of the smaller tau
  std::size_t upper;
  double at;          // a t in [t_min, t_max] where the order is reversed
};

/// Pairs of fitted lines (sorted by tau) whose order flips somewhere in [t_min, t_max].
std::vector<Crossing> find_crossings(std::span<const FittedLine> lines, double t_min, double t_max);

}  // namespace syspredict
