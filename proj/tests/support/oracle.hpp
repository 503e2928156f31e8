#pragma once

// Brute-force joint survival of system lifetimes: enumerate which interval
// each component falls in and weight the pattern by its copula rectangle
// probability. Independent of the inclusion–exclusion machinery under test.

#include <algorithm>
#include <vector>

#include "syspredict/copula.hpp"
#include "syspredict/structure.hpp"

namespace oracle {

using namespace syspredict;

inline bool works(const SystemStructure& s, unsigned alive) {
  for (ComponentSet p : s.paths()) {
    if ((p & alive) == p) return true;
  }
  return false;
}

/// Pr(T_k > times_k for all k) where levels = F̄(times) sorted so that
/// cut points are the distinct times. `levels` holds one survival level per
/// structure; levels need not be ordered.
inline double joint_survival(std::span<const SystemStructure> systems, std::span<const double> levels,
                             const SurvivalCopula& c) {
  const int n = c.dimension();
  // distinct cut levels, descending (earliest time first)
  std::vector<double> cuts(levels.begin(), levels.end());
  std::sort(cuts.begin(), cuts.end(), std::greater<>());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  const int bins = static_cast<int>(cuts.size()) + 1;  // bin b: survival level in (cuts[b], cuts[b-1]]
  auto upper = [&](int b) { return b == 0 ? 1.0 : cuts[b - 1]; };
  auto lower = [&](int b) { return b == bins - 1 ? 0.0 : cuts[b]; };

  std::vector<int> state(n, 0);
  double total = 0.0;
  std::vector<double> point(n);
  for (;;) {
    bool ok = true;
    for (std::size_t k = 0; k < systems.size() && ok; ++k) {
      // component survives time_k iff its level is below F̄(time_k)
      unsigned alive = 0;
      for (int i = 0; i < n; ++i) {
        if (upper(state[i]) <= levels[k]) alive |= 1u << i;
      }
      ok = works(systems[k], alive);
    }
    if (ok) {
      // Pr(V_i ∈ (lower, upper]) for all i via corners of Ĉ
      double mass = 0.0;
      for (unsigned corner = 0; corner < (1u << n); ++corner) {
        int sign = 1;
        for (int i = 0; i < n; ++i) {
          if (corner >> i & 1u) {
            point[i] = lower(state[i]);
            sign = -sign;
          } else {
            point[i] = upper(state[i]);
          }
        }
        mass += sign * c.eval(point);
      }
      total += mass;
    }
    int i = 0;
    while (i < n && ++state[i] == bins) state[i++] = 0;
    if (i == n) break;
  }
  return total;
}

}  // namespace oracle
