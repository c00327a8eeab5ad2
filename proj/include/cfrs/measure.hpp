#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "cfrs/fuzzy.hpp"
#include "cfrs/quantifier.hpp"

namespace cfrs {

/// A subset of a finite universe, given by distinct element indices.
class SubsetView {
 public:
  SubsetView() = default;
  explicit SubsetView(std::vector<std::size_t> members);
  /// Members are the positions where mask is true.
  static SubsetView from_mask(const std::vector<bool>& mask);
  static SubsetView all(std::size_t n);

  std::span<const std::size_t> members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  bool contains(std::size_t i) const;
  /// Members not in this subset, out of {0..n-1}.
  SubsetView complement(std::size_t n) const;

 private:
  std::vector<std::size_t> members_;  // sorted ascending
};

namespace detail {
class MeasureModel;
}

/// Monotone measure (capacity) on a universe of `size()` elements:
/// mu(empty) = 0, mu(X) = 1, A subset of B implies mu(A) <= mu(B).
///
/// Besides evaluation on arbitrary subsets, every measure evaluates the
/// descending chain {order[i], ..., order[n-1]} for all i in one pass, which
/// is what Choquet integration consumes.
class Measure {
 public:
  enum class Kind {
    symmetric,
    additive,
    dual,
    partial_universal,
    partial_existential,
    fuzzy_removal,
    wowa,
    ordered_two_symmetric,
  };

  explicit Measure(std::shared_ptr<const detail::MeasureModel> model);

  std::size_t size() const;
  Kind kind() const;

  /// Throws DomainError for indices outside the universe.
  double operator()(const SubsetView& subset) const;

  /// out[i] = mu({order[i], ..., order[n-1]}); order must be a permutation
  /// of 0..n-1 and out must have n entries.
  void chain(std::span<const std::size_t> order, std::span<double> out) const;
  std::vector<double> chain(std::span<const std::size_t> order) const;

  const detail::MeasureModel& model() const { return *model_; }

 private:
  std::shared_ptr<const detail::MeasureModel> model_;
};

double measure_eval(const Measure& mu, const SubsetView& subset);

/// mu_Q(A) = Q(|A| / n).
Measure symmetric_from_quantifier(const Quantifier& q, std::size_t n);
/// mu(A) = sum of p_i over A.
Measure additive_from_weights(const WeightVector& p);
/// dual(mu)(A) = 1 - mu(co A).
Measure dual_measure(const Measure& mu);
/// mu(B) = 1 iff every element outside `outliers` is in B. Requires at least
/// one element outside `outliers`.
Measure partial_universal(const SubsetView& outliers, std::size_t n);
/// Dual of partial_universal: mu(B) = 1 iff B meets the non-outliers.
Measure partial_existential(const SubsetView& outliers, std::size_t n);
/// mu(A) = T over {O(x) : x not in A}, mu(X) = 1, mu(empty) = 0.
Measure fuzzy_removal(std::span<const double> outlier_degrees, TNorm tnorm = TNormKind::minimum);
Measure fuzzy_removal(const FuzzySet& outlier_degrees, TNorm tnorm = TNormKind::minimum);
/// mu(A) = Q(sum_{x_i in A} p_i), p_i = (1 - O(x_i)) / (n - sum_j O(x_j)).
Measure wowa_measure(const Quantifier& q, std::span<const double> outlier_degrees);
Measure wowa_measure(const Quantifier& q, const FuzzySet& outlier_degrees);
/// mu(A) = Q(sum of w over A's positions in the ascending-O order). The
/// k = ceil((1 - contamination) n) least-outlying elements weigh
/// (1 - t)/k + t/n, the rest t/n. Ties in O are broken by index.
Measure ordered_two_symmetric(const Quantifier& q, std::span<const double> outlier_degrees, double t,
                              double contamination);
Measure ordered_two_symmetric(const Quantifier& q, const FuzzySet& outlier_degrees, double t,
                              double contamination);

/// ceil((1 - contamination) n), the trusted block size of the two-symmetric measure.
std::size_t trusted_count(std::size_t n, double contamination);

namespace detail {

class MeasureModel {
 public:
  virtual ~MeasureModel() = default;
  virtual std::size_t size() const = 0;
  virtual Measure::Kind kind() const = 0;
  /// members sorted, distinct, in range, neither empty nor the whole universe.
  virtual double value_proper(std::span<const std::size_t> members) const = 0;
  /// Fills out[i] for i >= 1; out[0] is set to 1 by the caller.
  virtual void chain_proper(std::span<const std::size_t> order, std::span<double> out) const;
};

}  // namespace detail

}  // namespace cfrs
