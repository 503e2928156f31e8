#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace syspredict {

/// Set of component indices, bit i-1 standing for component i.
using ComponentSet = std::uint64_t;

inline constexpr int kMaxComponents = 24;
inline constexpr int kMaxPathSets = 20;

ComponentSet make_set(std::span<const int> one_based_indices);
std::vector<int> set_members(ComponentSet set);  // 1-based, ascending
int set_size(ComponentSet set) noexcept;

struct SignedTerm {
  int sign;  // accumulated coefficient after merging; +1/-1 for unmerged terms
  ComponentSet set;

  friend bool operator==(const SignedTerm&, const SignedTerm&) = default;
};

using SignedTermList = std::vector<SignedTerm>;

/// Coherent system described by its minimal path sets.
class SystemStructure {
 public:
  /// Validates and normalizes: each path is sorted and deduplicated, the path
  /// list is ordered by (size, bitmask). Throws on empty input, indices outside
  /// 1..n, a path containing another path, or a component that no path uses.
  static SystemStructure validate(int n, const std::vector<std::vector<int>>& paths);

  /// Convenience constructors for the usual shapes.
  static SystemStructure series(int n);
  static SystemStructure parallel(int n);
  /// k-out-of-n in the "fails at the k-th failure" sense: lifetime is X_{k:n}.
  static SystemStructure order_statistic(int k, int n);

  int n() const noexcept { return n_; }
  const std::vector<ComponentSet>& paths() const noexcept { return paths_; }
  std::vector<std::vector<int>> path_lists() const;

  /// max over paths of the min over the path's component times.
  double lifetime(std::span<const double> times) const;

  /// Signed unions of every nonempty subset of path sets, identical unions
  /// merged and zero coefficients dropped. Sorted by (size, bitmask).
  SignedTermList inclusion_exclusion() const;

  friend bool operator==(const SystemStructure&, const SystemStructure&) = default;

 private:
  SystemStructure(int n, std::vector<ComponentSet> paths) : n_(n), paths_(std::move(paths)) {}

  int n_ = 0;
  std::vector<ComponentSet> paths_;
};

}  // namespace syspredict
