#include "cfrs/decision_system.hpp"

#include <algorithm>
#include <cmath>

#include "cfrs/fuzzy.hpp"

namespace cfrs {

DecisionSystem::DecisionSystem(std::vector<std::string> attributes, std::string decision,
                               std::vector<double> values, std::vector<std::string> labels)
    : attributes_(std::move(attributes)),
      decision_(std::move(decision)),
      values_(std::move(values)),
      labels_(std::move(labels)) {
  if (labels_.empty()) throw DomainError("decision system needs at least one instance");
  if (values_.size() != labels_.size() * attributes_.size()) {
    throw DomainError("decision system value matrix does not match its shape");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw DomainError("conditional attribute values must be finite");
  }
  classes_ = labels_;
  std::sort(classes_.begin(), classes_.end());
  classes_.erase(std::unique(classes_.begin(), classes_.end()), classes_.end());
  class_of_.resize(labels_.size());
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    class_of_[i] = static_cast<std::size_t>(
        std::lower_bound(classes_.begin(), classes_.end(), labels_[i]) - classes_.begin());
  }
}

DecisionSystem DecisionSystem::subset(std::span<const std::size_t> rows) const {
  const std::size_t d = attributes_.size();
  std::vector<double> values;
  values.reserve(rows.size() * d);
  std::vector<std::string> labels;
  labels.reserve(rows.size());
  for (std::size_t r : rows) {
    if (r >= size()) throw DomainError("row index outside the decision system");
    auto src = row(r);
    values.insert(values.end(), src.begin(), src.end());
    labels.push_back(labels_[r]);
  }
  return DecisionSystem(attributes_, decision_, std::move(values), std::move(labels));
}

}  // namespace cfrs
