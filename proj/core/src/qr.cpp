#include "syspredict/qr.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "syspredict/error.hpp"
#include "syspredict/numerics.hpp"

namespace syspredict {

namespace {

void check_design(std::span<const Observation> data) {
  if (data.size() < 2) throw Error(ErrorCode::kDegenerateDesign, "need at least two observations");
  for (const Observation& o : data) {
    if (!std::isfinite(o.t) || !std::isfinite(o.y)) {
      throw Error(ErrorCode::kInvalidParameter, "observations must be finite");
    }
  }
  const double t0 = data.front().t;
  if (std::all_of(data.begin(), data.end(), [t0](const Observation& o) { return o.t == t0; })) {
    throw Error(ErrorCode::kDegenerateDesign, "all t values are equal");
  }
}

struct Candidate {
  double loss;
  double intercept;
  double slope;
};

bool better(const Candidate& a, const Candidate& b) {
  if (std::isinf(b.loss)) return true;
  const double tol = 1e-12 * std::max(1.0, std::abs(b.loss));
  if (a.loss < b.loss - tol) return true;
  if (a.loss > b.loss + tol) return false;
  if (std::abs(a.slope) != std::abs(b.slope)) return std::abs(a.slope) < std::abs(b.slope);
  return a.intercept < b.intercept;
}

}  // namespace

double pinball_loss(std::span<const Observation> data, double tau, double intercept, double slope) {
  std::vector<double> terms(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    const double r = data[i].y - intercept - slope * data[i].t;
    terms[i] = r * (tau - (r < 0.0 ? 1.0 : 0.0));
  }
  return numerics::compensated_sum(terms);
}

FittedLine fit_lqr(std::span<const Observation> data, double tau) {
  if (!(tau > 0.0 && tau < 1.0)) throw Error(ErrorCode::kOutOfRange, "tau must lie in (0, 1)");
  check_design(data);
  const std::size_t n = data.size();

  Candidate best{std::numeric_limits<double>::infinity(), 0.0, 0.0};
  auto consider = [&](std::size_t pivot, double slope) {
    const double a = data[pivot].y - slope * data[pivot].t;
    const Candidate c{pinball_loss(data, tau, a, slope), a, slope};
    if (better(c, best)) best = c;
  };

  struct Break {
    double slope;
    double weight;
  };
  std::vector<Break> breaks;
  breaks.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    breaks.clear();
    double start = 0.0;  // dL/db as b → -∞
    double total = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double e = data[j].t - data[i].t;
      if (e == 0.0) continue;
      breaks.push_back({(data[j].y - data[i].y) / e, std::abs(e)});
      start -= e > 0.0 ? tau * e : (1.0 - tau) * -e;
      total += std::abs(e);
    }
    consider(i, 0.0);
    if (breaks.empty()) continue;
    std::sort(breaks.begin(), breaks.end(),
              [](const Break& x, const Break& y) { return x.slope < y.slope; });
    const double flat = 1e-12 * total;
    double d = start;
    for (std::size_t k = 0; k < breaks.size(); ++k) {
      d += breaks[k].weight;
      if (d >= -flat) {
        consider(i, breaks[k].slope);
        if (d <= flat) {
          // flat stretch up to the next distinct slope
          std::size_t m = k + 1;
          while (m < breaks.size() && breaks[m].slope == breaks[k].slope) ++m;
          if (m < breaks.size()) consider(i, breaks[m].slope);
        }
        break;
      }
    }
  }
  return FittedLine{best.intercept, best.slope, tau, best.loss};
}

FittedLine fit_ols(std::span<const Observation> data) {
  check_design(data);
  const double n = static_cast<double>(data.size());
  std::vector<double> buf(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) buf[i] = data[i].t;
  const double tbar = numerics::compensated_sum(buf) / n;
  for (std::size_t i = 0; i < data.size(); ++i) buf[i] = data[i].y;
  const double ybar = numerics::compensated_sum(buf) / n;
  std::vector<double> sxy(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    const double dt = data[i].t - tbar;
    buf[i] = dt * dt;
    sxy[i] = dt * (data[i].y - ybar);
  }
  const double sxx = numerics::compensated_sum(buf);
  const double slope = numerics::compensated_sum(sxy) / sxx;
  const double intercept = ybar - slope * tbar;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const double r = data[i].y - intercept - slope * data[i].t;
    buf[i] = r * r;
  }
  return FittedLine{intercept, slope, std::nullopt, numerics::compensated_sum(buf)};
}

ResidualCounts residual_counts(std::span<const Observation> data, const FittedLine& line, double tol) {
  ResidualCounts c;
  for (const Observation& o : data) {
    const double r = o.y - line.at(o.t);
    if (std::abs(r) <= tol) {
      ++c.zero;
    } else if (r < 0.0) {
      ++c.below;
    } else {
      ++c.above;
    }
  }
  return c;
}

std::vector<Crossing> find_crossings(std::span<const FittedLine> lines, double t_min, double t_max) {
  std::vector<std::size_t> order(lines.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return lines[a].tau.value_or(0.0) < lines[b].tau.value_or(0.0);
  });
  std::vector<Crossing> out;
  for (std::size_t x = 0; x < order.size(); ++x) {
    for (std::size_t y = x + 1; y < order.size(); ++y) {
      const FittedLine& lo = lines[order[x]];
      const FittedLine& hi = lines[order[y]];
      // difference is linear in t, so checking the ends suffices
      for (double t : {t_min, t_max}) {
        if (lo.at(t) > hi.at(t)) {
          out.push_back({order[x], order[y], t});
          break;
        }
      }
    }
  }
  return out;
}

}  // namespace syspredict
