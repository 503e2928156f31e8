#pragma once

#include <cmath>
#include <vector>

#include "syspredict/copula.hpp"
#include "syspredict/marginal.hpp"
#include "syspredict/predictor.hpp"
#include "syspredict/structure.hpp"

namespace fixtures {

using namespace syspredict;

// max(X1, min(X2, X3)) watched from the first failure
inline std::vector<SystemStructure> bridge_pair() {
  return {SystemStructure::series(3), SystemStructure::validate(3, {{1}, {2, 3}})};
}

// min(X1, max(X2, X3)) watched from the first failure
inline std::vector<SystemStructure> guard_pair() {
  return {SystemStructure::series(3), SystemStructure::validate(3, {{1, 2}, {1, 3}})};
}

// first, second and last order statistics of three components
inline std::vector<SystemStructure> order_triple() {
  return {SystemStructure::order_statistic(1, 3), SystemStructure::order_statistic(2, 3),
          SystemStructure::order_statistic(3, 3)};
}

inline std::vector<SystemStructure> first_and_last() {
  return {SystemStructure::order_statistic(1, 3), SystemStructure::order_statistic(3, 3)};
}

inline SurvivalCopula clayton23() { return SurvivalCopula::clayton_pair(3, 2, 3, 1.0); }
inline SurvivalCopula fgm3(double theta = 1.0) { return SurvivalCopula::fgm(3, theta); }
inline Marginal unit_exponential() { return Marginal::exponential(1.0); }

// Interior grid point i of k on (0, 1): (i + 0.5) / k.
inline double grid(int i, int k) { return (i + 0.5) / k; }

}  // namespace fixtures
