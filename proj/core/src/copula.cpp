#include "syspredict/copula.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "syspredict/error.hpp"

namespace syspredict {

namespace {

class ProductModel final : public CopulaModel {
 public:
  explicit ProductModel(int n) : n_(n) {}

  int dimension() const noexcept override { return n_; }
  std::string name() const override { return "product"; }

  double eval(std::span<const double> u) const override {
    double p = 1.0;
    for (double x : u) p *= x;
    return p;
  }

  double partial(ComponentSet coords, std::span<const double> u) const override {
    double p = 1.0;
    for (int i = 0; i < n_; ++i) {
      if (!(coords >> i & 1)) p *= u[i];
    }
    return p;
  }

  int max_partial_order() const noexcept override { return n_; }

 private:
  int n_;
};

class FgmModel final : public CopulaModel {
 public:
  FgmModel(int n, double theta) : n_(n), theta_(theta) {}

  int dimension() const noexcept override { return n_; }
  std::string name() const override { return "fgm"; }

  double eval(std::span<const double> u) const override { return partial(0, u); }

  double partial(ComponentSet coords, std::span<const double> u) const override {
    double base = 1.0;
    double top = theta_;
    for (int i = 0; i < n_; ++i) {
      if (coords >> i & 1) {
        top *= 1.0 - 2.0 * u[i];
      } else {
        base *= u[i];
        top *= u[i] * (1.0 - u[i]);
      }
    }
    return base + top;
  }

  int max_partial_order() const noexcept override { return n_; }

 private:
  int n_;
  double theta_;
};

// Clayton survival pair K(a,b) = (a^-θ + b^-θ - 1)^(-1/θ), written through
// r = a^θ (a^-θ + b^-θ - 1) = 1 + (a/b)^θ - a^θ ≥ 1 to stay finite near 0.
class ClaytonPairModel final : public CopulaModel {
 public:
  ClaytonPairModel(int n, int j, int k, double theta) : n_(n), j_(j), k_(k), theta_(theta) {}

  int dimension() const noexcept override { return n_; }
  std::string name() const override { return "clayton_pair"; }

  double eval(std::span<const double> u) const override { return partial(0, u); }

  double partial(ComponentSet coords, std::span<const double> u) const override {
    double outside = 1.0;
    for (int i = 0; i < n_; ++i) {
      if (i == j_ || i == k_) continue;
      if (!(coords >> i & 1)) outside *= u[i];
    }
    const bool da = coords >> j_ & 1;
    const bool db = coords >> k_ & 1;
    return outside * pair_term(u[j_], u[k_], da, db);
  }

 private:
  double ratio_term(double a, double b) const {
    return 1.0 + std::pow(a / b, theta_) - std::pow(a, theta_);
  }

  double pair_term(double a, double b, bool da, bool db) const {
    if (!da && !db) {
      if (a == 0.0 || b == 0.0) return 0.0;
      return a * std::pow(ratio_term(a, b), -1.0 / theta_);
    }
    if (da && db) {
      if (a == 0.0 || b == 0.0) return 0.0;
      return (1.0 + theta_) * std::pow(ratio_term(a, b), -1.0 / theta_ - 2.0) *
             std::pow(a, theta_) * std::pow(b, -theta_ - 1.0);
    }
    if (db) std::swap(a, b);
    // ∂_a K = r^{-(1+θ)/θ}
    if (b == 0.0) return 0.0;
    if (a == 0.0) return 1.0;
    return std::pow(ratio_term(a, b), -(1.0 + theta_) / theta_);
  }

  int n_;
  int j_;
  int k_;
  double theta_;
};

void check_point(const SurvivalCopula& c, std::span<const double> u) {
  if (u.size() != static_cast<std::size_t>(c.dimension())) {
    throw Error(ErrorCode::kDimensionMismatch, "copula of dimension " +
                                                   std::to_string(c.dimension()) +
                                                   " evaluated at a point of size " +
                                                   std::to_string(u.size()));
  }
  for (double x : u) {
    if (!(x >= 0.0 && x <= 1.0)) {
      throw Error(ErrorCode::kOutOfUnitInterval, "copula argument " + std::to_string(x));
    }
  }
}

}  // namespace

SurvivalCopula SurvivalCopula::product(int n) {
  if (n < 1 || n > kMaxComponents) {
    throw Error(ErrorCode::kInvalidParameter, "product copula dimension " + std::to_string(n));
  }
  return SurvivalCopula(std::make_shared<ProductModel>(n), CopulaFamily::kProduct, 0.0, {0, 0});
}

SurvivalCopula SurvivalCopula::fgm(int n, double theta) {
  if (n < 2 || n > kMaxComponents) {
    throw Error(ErrorCode::kInvalidParameter, "FGM copula dimension " + std::to_string(n));
  }
  if (!(theta >= -1.0 && theta <= 1.0)) {
    throw Error(ErrorCode::kInvalidParameter, "FGM requires theta in [-1,1], got " +
                                                  std::to_string(theta));
  }
  return SurvivalCopula(std::make_shared<FgmModel>(n, theta), CopulaFamily::kFgm, theta, {0, 0});
}

SurvivalCopula SurvivalCopula::clayton_pair(int n, int j, int k, double theta) {
  if (n < 2 || n > kMaxComponents) {
    throw Error(ErrorCode::kInvalidParameter, "Clayton pair copula dimension " + std::to_string(n));
  }
  if (j < 1 || j > n || k < 1 || k > n || j == k) {
    throw Error(ErrorCode::kIndexOutOfRange, "Clayton pair must name two distinct components in 1.." +
                                                 std::to_string(n));
  }
  if (!(theta > 0.0) || !std::isfinite(theta)) {
    throw Error(ErrorCode::kInvalidParameter, "Clayton requires theta > 0, got " +
                                                  std::to_string(theta));
  }
  if (j > k) std::swap(j, k);
  return SurvivalCopula(std::make_shared<ClaytonPairModel>(n, j - 1, k - 1, theta),
                        CopulaFamily::kClaytonPair, theta, {j, k});
}

SurvivalCopula SurvivalCopula::custom(std::shared_ptr<const CopulaModel> model,
                                      CopulaFamily family, double theta, std::array<int, 2> pair) {
  if (!model) throw Error(ErrorCode::kInvalidParameter, "null copula model");
  return SurvivalCopula(std::move(model), family, theta, pair);
}

double SurvivalCopula::eval(std::span<const double> u) const {
  check_point(*this, u);
  return model_->eval(u);
}

double SurvivalCopula::partial(std::span<const int> indices, std::span<const double> u) const {
  ComponentSet coords = 0;
  for (int i : indices) {
    if (i < 1 || i > dimension()) {
      throw Error(ErrorCode::kIndexOutOfRange, "partial index " + std::to_string(i));
    }
    const ComponentSet bit = ComponentSet{1} << (i - 1);
    if (coords & bit) throw Error(ErrorCode::kInvalidParameter, "repeated partial index");
    coords |= bit;
  }
  return partial(coords, u);
}

double SurvivalCopula::partial(ComponentSet coords, std::span<const double> u) const {
  const int order = std::popcount(coords);
  if (order < 1 || order > 3 || order > model_->max_partial_order()) {
    throw Error(ErrorCode::kUnsupportedOrder,
                "mixed partials of order " + std::to_string(order) + " are not available");
  }
  if (coords >> dimension() != 0) {
    throw Error(ErrorCode::kIndexOutOfRange, "partial coordinate beyond copula dimension");
  }
  check_point(*this, u);
  return model_->partial(coords, u);
}

CopulaSlice::CopulaSlice(SurvivalCopula copula, std::vector<Slot> assignment)
    : copula_(std::move(copula)), assignment_(std::move(assignment)) {
  if (assignment_.size() != static_cast<std::size_t>(copula_.dimension())) {
    throw Error(ErrorCode::kIncompleteAssignment,
                "slice assigns " + std::to_string(assignment_.size()) + " of " +
                    std::to_string(copula_.dimension()) + " coordinates");
  }
}

double CopulaSlice::operator()(double u, double v, double w) const {
  const std::array<double, 4> values{u, v, w, 1.0};
  std::array<double, kMaxComponents> point{};
  for (std::size_t i = 0; i < assignment_.size(); ++i) {
    point[i] = values[static_cast<std::size_t>(assignment_[i])];
  }
  return copula_.eval(std::span<const double>(point.data(), assignment_.size()));
}

CopulaSlice slice(const SurvivalCopula& c, std::vector<Slot> assignment) {
  return CopulaSlice(c, std::move(assignment));
}

double fd_partial_oracle(const SurvivalCopula& c, std::span<const int> indices,
                         std::span<const double> u, double h) {
  const std::size_t k = indices.size();
  if (k < 1 || k > 3) throw Error(ErrorCode::kUnsupportedOrder, "finite differences of order 1..3");
  if (u.size() != static_cast<std::size_t>(c.dimension())) {
    throw Error(ErrorCode::kDimensionMismatch, "point size does not match copula dimension");
  }
  for (int i : indices) {
    if (i < 1 || i > c.dimension()) throw Error(ErrorCode::kIndexOutOfRange, "partial index");
    const double x = u[static_cast<std::size_t>(i - 1)];
    if (x - h < 0.0 || x + h > 1.0) {
      throw Error(ErrorCode::kBoundaryTooClose,
                  "coordinate " + std::to_string(i) + " is closer than h to the boundary");
    }
  }
  std::vector<double> point(u.begin(), u.end());
  double sum = 0.0;
  for (unsigned mask = 0; mask < (1u << k); ++mask) {
    double sign = 1.0;
    for (std::size_t d = 0; d < k; ++d) {
      const bool plus = mask >> d & 1;
      point[static_cast<std::size_t>(indices[d] - 1)] =
          u[static_cast<std::size_t>(indices[d] - 1)] + (plus ? h : -h);
      if (!plus) sign = -sign;
    }
    sum += sign * c.eval(point);
  }
  return sum / std::pow(2.0 * h, static_cast<double>(k));
}

}  // namespace syspredict
