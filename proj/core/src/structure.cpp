#include "syspredict/structure.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <map>
#include <string>

#include "syspredict/error.hpp"

namespace syspredict {

namespace {

bool by_size_then_mask(ComponentSet a, ComponentSet b) {
  const int sa = set_size(a);
  const int sb = set_size(b);
  return sa != sb ? sa < sb : a < b;
}

// n choose k, small arguments only.
int choose(int n, int k) {
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return static_cast<int>(r);
}

}  // namespace

ComponentSet make_set(std::span<const int> one_based_indices) {
  ComponentSet set = 0;
  for (int i : one_based_indices) {
    if (i < 1 || i > 64) {
      throw Error(ErrorCode::kIndexOutOfRange, "component index " + std::to_string(i));
    }
    set |= ComponentSet{1} << (i - 1);
  }
  return set;
}

std::vector<int> set_members(ComponentSet set) {
  std::vector<int> out;
  while (set != 0) {
    const int bit = std::countr_zero(set);
    out.push_back(bit + 1);
    set &= set - 1;
  }
  return out;
}

int set_size(ComponentSet set) noexcept { return std::popcount(set); }

SystemStructure SystemStructure::validate(int n, const std::vector<std::vector<int>>& paths) {
  if (n < 1 || n > kMaxComponents) {
    throw Error(ErrorCode::kIndexOutOfRange,
                "component count must be in 1.." + std::to_string(kMaxComponents) + ", got " +
                    std::to_string(n));
  }
  if (paths.empty()) throw Error(ErrorCode::kEmptyPaths, "structure has no path sets");

  std::vector<ComponentSet> sets;
  sets.reserve(paths.size());
  for (const auto& path : paths) {
    if (path.empty()) throw Error(ErrorCode::kEmptyPaths, "empty path set");
    for (int i : path) {
      if (i < 1 || i > n) {
        throw Error(ErrorCode::kIndexOutOfRange,
                    "component index " + std::to_string(i) + " outside 1.." + std::to_string(n));
      }
    }
    sets.push_back(make_set(path));
  }
  std::sort(sets.begin(), sets.end(), by_size_then_mask);

  for (std::size_t a = 0; a < sets.size(); ++a) {
    for (std::size_t b = a + 1; b < sets.size(); ++b) {
      // sorted by size, so only sets[a] can be contained in sets[b]
      if ((sets[a] & sets[b]) == sets[a]) {
        throw Error(ErrorCode::kNonMinimalPath,
                    sets[a] == sets[b] ? "duplicate path set" : "a path set contains another");
      }
    }
  }
  if (sets.size() > static_cast<std::size_t>(kMaxPathSets)) {
    throw Error(ErrorCode::kTooManyTerms, "at most " + std::to_string(kMaxPathSets) +
                                              " minimal path sets are supported");
  }

  ComponentSet covered = 0;
  for (ComponentSet s : sets) covered |= s;
  const ComponentSet all = (ComponentSet{1} << n) - 1;
  if (covered != all) {
    const int missing = std::countr_zero(all & ~covered) + 1;
    throw Error(ErrorCode::kUncoveredComponent,
                "component " + std::to_string(missing) + " is in no path set");
  }
  return SystemStructure(n, std::move(sets));
}

SystemStructure SystemStructure::series(int n) { return order_statistic(1, n); }

SystemStructure SystemStructure::parallel(int n) { return order_statistic(n, n); }

SystemStructure SystemStructure::order_statistic(int k, int n) {
  if (n < 1 || k < 1 || k > n) {
    throw Error(ErrorCode::kInvalidOrder, "order statistic " + std::to_string(k) + " of " +
                                              std::to_string(n));
  }
  if (n > kMaxComponents || choose(n, k - 1) > kMaxPathSets) {
    throw Error(ErrorCode::kTooManyTerms, "order statistic has too many path sets");
  }
  // X_{k:n} survives while at least n-k+1 components work: paths are all
  // subsets of size n-k+1.
  const int size = n - k + 1;
  std::vector<std::vector<int>> paths;
  const ComponentSet all = (ComponentSet{1} << n) - 1;
  for (ComponentSet s = 1; s <= all; ++s) {
    if (set_size(s) == size) paths.push_back(set_members(s));
  }
  return validate(n, paths);
}

std::vector<std::vector<int>> SystemStructure::path_lists() const {
  std::vector<std::vector<int>> out;
  out.reserve(paths_.size());
  for (ComponentSet s : paths_) out.push_back(set_members(s));
  return out;
}

double SystemStructure::lifetime(std::span<const double> times) const {
  if (times.size() != static_cast<std::size_t>(n_)) {
    throw Error(ErrorCode::kLengthMismatch, "expected " + std::to_string(n_) +
                                                " component times, got " +
                                                std::to_string(times.size()));
  }
  double best = -std::numeric_limits<double>::infinity();
  for (ComponentSet path : paths_) {
    double weakest = std::numeric_limits<double>::infinity();
    for (ComponentSet s = path; s != 0; s &= s - 1) {
      weakest = std::min(weakest, times[std::countr_zero(s)]);
    }
    best = std::max(best, weakest);
  }
  return best;
}

SignedTermList SystemStructure::inclusion_exclusion() const {
  const std::size_t r = paths_.size();
  std::map<ComponentSet, int> merged;
  for (std::uint64_t subset = 1; subset < (std::uint64_t{1} << r); ++subset) {
    ComponentSet u = 0;
    for (std::uint64_t s = subset; s != 0; s &= s - 1) u |= paths_[std::countr_zero(s)];
    merged[u] += (std::popcount(subset) % 2 == 1) ? 1 : -1;
  }
  SignedTermList out;
  for (const auto& [set, sign] : merged) {
    if (sign != 0) out.push_back({sign, set});
  }
  std::sort(out.begin(), out.end(),
            [](const SignedTerm& a, const SignedTerm& b) { return by_size_then_mask(a.set, b.set); });
  return out;
}

}  // namespace syspredict
