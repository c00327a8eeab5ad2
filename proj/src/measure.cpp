#include "cfrs/measure.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace cfrs {

SubsetView::SubsetView(std::vector<std::size_t> members) : members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  if (std::adjacent_find(members_.begin(), members_.end()) != members_.end()) {
    throw DomainError("subset members must be distinct");
  }
}

SubsetView SubsetView::from_mask(const std::vector<bool>& mask) {
  std::vector<std::size_t> members;
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (mask[i]) members.push_back(i);
  }
  return SubsetView(std::move(members));
}

SubsetView SubsetView::all(std::size_t n) {
  std::vector<std::size_t> members(n);
  std::iota(members.begin(), members.end(), std::size_t{0});
  return SubsetView(std::move(members));
}

bool SubsetView::contains(std::size_t i) const {
  return std::binary_search(members_.begin(), members_.end(), i);
}

SubsetView SubsetView::complement(std::size_t n) const {
  std::vector<std::size_t> out;
  out.reserve(n > members_.size() ? n - members_.size() : 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (!contains(i)) out.push_back(i);
  }
  return SubsetView(std::move(out));
}

namespace detail {

void MeasureModel::chain_proper(std::span<const std::size_t> order, std::span<double> out) const {
  std::vector<std::size_t> members;
  for (std::size_t i = 1; i < order.size(); ++i) {
    members.assign(order.begin() + static_cast<std::ptrdiff_t>(i), order.end());
    std::sort(members.begin(), members.end());
    out[i] = value_proper(members);
  }
}

}  // namespace detail

namespace {

using detail::MeasureModel;

double clamp_unit(double x) { return std::clamp(x, 0.0, 1.0); }

std::vector<double> checked_degrees(std::span<const double> degrees) {
  if (degrees.empty()) throw DomainError("outlier degrees must be nonempty");
  for (double d : degrees) check_degree(d, "outlier degree");
  return {degrees.begin(), degrees.end()};
}

/// Measures of the form Q(sum of per-element weights over A).
class WeightedQuantifierModel : public MeasureModel {
 public:
  WeightedQuantifierModel(Measure::Kind kind, Quantifier q, std::vector<double> weights)
      : kind_(kind), q_(std::move(q)), weights_(std::move(weights)) {}

  std::size_t size() const override { return weights_.size(); }
  Measure::Kind kind() const override { return kind_; }

  double value_proper(std::span<const std::size_t> members) const override {
    double sum = 0.0;
    for (std::size_t i : members) sum += weights_[i];
    return q_.eval_unchecked(clamp_unit(sum));
  }

  void chain_proper(std::span<const std::size_t> order, std::span<double> out) const override {
    double suffix = 0.0;
    for (std::size_t i = order.size(); i-- > 1;) {
      suffix += weights_[order[i]];
      out[i] = q_.eval_unchecked(clamp_unit(suffix));
    }
  }

 private:
  Measure::Kind kind_;
  Quantifier q_;
  std::vector<double> weights_;
};

class SymmetricModel : public MeasureModel {
 public:
  SymmetricModel(Quantifier q, std::size_t n) : q_(std::move(q)), n_(n) {}

  std::size_t size() const override { return n_; }
  Measure::Kind kind() const override { return Measure::Kind::symmetric; }

  double value_proper(std::span<const std::size_t> members) const override {
    return q_.eval_unchecked(static_cast<double>(members.size()) / static_cast<double>(n_));
  }

  void chain_proper(std::span<const std::size_t> order, std::span<double> out) const override {
    const double n = static_cast<double>(n_);
    for (std::size_t i = 1; i < order.size(); ++i) {
      out[i] = q_.eval_unchecked(static_cast<double>(n_ - i) / n);
    }
  }

 private:
  Quantifier q_;
  std::size_t n_;
};

class AdditiveModel : public MeasureModel {
 public:
  explicit AdditiveModel(std::vector<double> p) : p_(std::move(p)) {}

  std::size_t size() const override { return p_.size(); }
  Measure::Kind kind() const override { return Measure::Kind::additive; }

  double value_proper(std::span<const std::size_t> members) const override {
    double sum = 0.0;
    for (std::size_t i : members) sum += p_[i];
    return clamp_unit(sum);
  }

  void chain_proper(std::span<const std::size_t> order, std::span<double> out) const override {
    double suffix = 0.0;
    for (std::size_t i = order.size(); i-- > 1;) {
      suffix += p_[order[i]];
      out[i] = clamp_unit(suffix);
    }
  }

 private:
  std::vector<double> p_;
};

class DualModel : public MeasureModel {
 public:
  DualModel(Measure inner, Measure::Kind kind) : inner_(std::move(inner)), kind_(kind) {}

  std::size_t size() const override { return inner_.size(); }
  Measure::Kind kind() const override { return kind_; }

  double value_proper(std::span<const std::size_t> members) const override {
    const std::size_t n = size();
    std::vector<std::size_t> co;
    co.reserve(n - members.size());
    std::size_t j = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (j < members.size() && members[j] == i) {
        ++j;
      } else {
        co.push_back(i);
      }
    }
    return 1.0 - inner_.model().value_proper(co);
  }

  void chain_proper(std::span<const std::size_t> order, std::span<double> out) const override {
    // co{order[i..n-1]} = {order[0..i-1]}, which is a suffix of the reversed order.
    const std::size_t n = order.size();
    std::vector<std::size_t> reversed(order.rbegin(), order.rend());
    std::vector<double> inner(n);
    inner_.chain(reversed, inner);
    for (std::size_t i = 1; i < n; ++i) out[i] = 1.0 - inner[n - i];
  }

 private:
  Measure inner_;
  Measure::Kind kind_;
};

class PartialUniversalModel : public MeasureModel {
 public:
  PartialUniversalModel(std::vector<bool> outlier, std::size_t trusted)
      : outlier_(std::move(outlier)), trusted_(trusted) {}

  std::size_t size() const override { return outlier_.size(); }
  Measure::Kind kind() const override { return Measure::Kind::partial_universal; }

  double value_proper(std::span<const std::size_t> members) const override {
    std::size_t covered = 0;
    for (std::size_t i : members) covered += outlier_[i] ? 0 : 1;
    return covered == trusted_ ? 1.0 : 0.0;
  }

  void chain_proper(std::span<const std::size_t> order, std::span<double> out) const override {
    // A*_i keeps every trusted element until the first trusted one in `order` drops out.
    bool all_trusted_in = true;
    for (std::size_t i = 1; i < order.size(); ++i) {
      if (!outlier_[order[i - 1]]) all_trusted_in = false;
      out[i] = all_trusted_in ? 1.0 : 0.0;
    }
  }

 private:
  std::vector<bool> outlier_;
  std::size_t trusted_;
};

class FuzzyRemovalModel : public MeasureModel {
 public:
  FuzzyRemovalModel(std::vector<double> o, TNorm tnorm) : o_(std::move(o)), tnorm_(std::move(tnorm)) {}

  std::size_t size() const override { return o_.size(); }
  Measure::Kind kind() const override { return Measure::Kind::fuzzy_removal; }

  double value_proper(std::span<const std::size_t> members) const override {
    double acc = 1.0;
    std::size_t j = 0;
    for (std::size_t i = 0; i < o_.size(); ++i) {
      if (j < members.size() && members[j] == i) {
        ++j;
      } else {
        acc = tnorm_(acc, o_[i]);
      }
    }
    return acc;
  }

  void chain_proper(std::span<const std::size_t> order, std::span<double> out) const override {
    // The removed part grows by one element per step; fold it incrementally.
    double acc = 1.0;
    if (tnorm_.is_minimum()) {
      for (std::size_t i = 1; i < order.size(); ++i) {
        acc = std::min(acc, o_[order[i - 1]]);
        out[i] = acc;
      }
      return;
    }
    for (std::size_t i = 1; i < order.size(); ++i) {
      acc = tnorm_(acc, o_[order[i - 1]]);
      out[i] = acc;
    }
  }

 private:
  std::vector<double> o_;
  TNorm tnorm_;
};

}  // namespace

// ---------------------------------------------------------------------------

Measure::Measure(std::shared_ptr<const detail::MeasureModel> model) : model_(std::move(model)) {
  if (!model_) throw DomainError("measure without a model");
  if (model_->size() == 0) throw DomainError("measure on an empty universe");
}

std::size_t Measure::size() const { return model_->size(); }

Measure::Kind Measure::kind() const { return model_->kind(); }

double Measure::operator()(const SubsetView& subset) const {
  const std::size_t n = size();
  for (std::size_t i : subset.members()) {
    if (i >= n) throw DomainError("subset index " + std::to_string(i) + " outside the universe");
  }
  if (subset.empty()) return 0.0;
  if (subset.size() == n) return 1.0;
  return model_->value_proper(subset.members());
}

void Measure::chain(std::span<const std::size_t> order, std::span<double> out) const {
  const std::size_t n = size();
  if (order.size() != n || out.size() != n) throw DomainError("chain length does not match the universe");
  out[0] = 1.0;
  model_->chain_proper(order, out);
}

std::vector<double> Measure::chain(std::span<const std::size_t> order) const {
  std::vector<double> out(order.size());
  chain(order, out);
  return out;
}

double measure_eval(const Measure& mu, const SubsetView& subset) { return mu(subset); }

Measure symmetric_from_quantifier(const Quantifier& q, std::size_t n) {
  if (n == 0) throw DomainError("measure on an empty universe");
  return Measure(std::make_shared<SymmetricModel>(q, n));
}

Measure additive_from_weights(const WeightVector& p) {
  return Measure(std::make_shared<AdditiveModel>(std::vector<double>(p.values().begin(), p.values().end())));
}

Measure dual_measure(const Measure& mu) {
  Measure::Kind kind = Measure::Kind::dual;
  if (mu.kind() == Measure::Kind::partial_universal) kind = Measure::Kind::partial_existential;
  return Measure(std::make_shared<DualModel>(mu, kind));
}

Measure partial_universal(const SubsetView& outliers, std::size_t n) {
  if (n == 0) throw DomainError("measure on an empty universe");
  std::vector<bool> mask(n, false);
  for (std::size_t i : outliers.members()) {
    if (i >= n) throw DomainError("outlier index outside the universe");
    mask[i] = true;
  }
  const std::size_t trusted = n - outliers.size();
  if (trusted == 0) throw DomainError("partial minimum needs at least one element outside O");
  return Measure(std::make_shared<PartialUniversalModel>(std::move(mask), trusted));
}

Measure partial_existential(const SubsetView& outliers, std::size_t n) {
  return dual_measure(partial_universal(outliers, n));
}

Measure fuzzy_removal(std::span<const double> outlier_degrees, TNorm tnorm) {
  return Measure(std::make_shared<FuzzyRemovalModel>(checked_degrees(outlier_degrees), std::move(tnorm)));
}

Measure fuzzy_removal(const FuzzySet& outlier_degrees, TNorm tnorm) {
  return fuzzy_removal(outlier_degrees.memberships(), std::move(tnorm));
}

Measure wowa_measure(const Quantifier& q, std::span<const double> outlier_degrees) {
  std::vector<double> p = checked_degrees(outlier_degrees);
  const double n = static_cast<double>(p.size());
  const double total = std::accumulate(p.begin(), p.end(), 0.0);
  const double denom = n - total;
  if (!(denom > 0.0)) throw DomainError("WOWA weights undefined: every element is fully outlying");
  for (double& v : p) v = (1.0 - v) / denom;
  return Measure(std::make_shared<WeightedQuantifierModel>(Measure::Kind::wowa, q, std::move(p)));
}

Measure wowa_measure(const Quantifier& q, const FuzzySet& outlier_degrees) {
  return wowa_measure(q, outlier_degrees.memberships());
}

std::size_t trusted_count(std::size_t n, double contamination) {
  if (!(contamination >= 0.0 && contamination < 1.0)) {
    throw DomainError("contamination must be in [0,1)");
  }
  // The tolerance keeps products such as 0.9 * 10 from rounding up a whole element.
  const double raw = (1.0 - contamination) * static_cast<double>(n);
  return static_cast<std::size_t>(std::ceil(raw - 1e-9));
}

Measure ordered_two_symmetric(const Quantifier& q, std::span<const double> outlier_degrees, double t,
                              double contamination) {
  check_degree(t, "outlier weight t");
  std::vector<double> o = checked_degrees(outlier_degrees);
  const std::size_t n = o.size();
  const std::size_t k = trusted_count(n, contamination);
  if (k == 0) throw DomainError("two-symmetric measure needs at least one trusted element");

  std::vector<std::size_t> by_outlierness(n);
  std::iota(by_outlierness.begin(), by_outlierness.end(), std::size_t{0});
  std::stable_sort(by_outlierness.begin(), by_outlierness.end(),
                   [&](std::size_t a, std::size_t b) { return o[a] < o[b]; });

  const double base = t / static_cast<double>(n);
  const double trusted = (1.0 - t) / static_cast<double>(k) + base;
  std::vector<double> w(n, base);
  for (std::size_t r = 0; r < k; ++r) w[by_outlierness[r]] = trusted;
  return Measure(
      std::make_shared<WeightedQuantifierModel>(Measure::Kind::ordered_two_symmetric, q, std::move(w)));
}

Measure ordered_two_symmetric(const Quantifier& q, const FuzzySet& outlier_degrees, double t,
                              double contamination) {
  return ordered_two_symmetric(q, outlier_degrees.memberships(), t, contamination);
}

}  // namespace cfrs
