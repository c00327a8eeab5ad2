#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace cfrs {

/// Numeric conditional attributes plus one categorical decision attribute.
/// Values are stored row-major. Class labels are kept in sorted order and
/// every instance refers to its class by position in that order.
class DecisionSystem {
 public:
  DecisionSystem(std::vector<std::string> attributes, std::string decision, std::vector<double> values,
                 std::vector<std::string> labels);

  std::size_t size() const { return labels_.size(); }
  std::size_t attribute_count() const { return attributes_.size(); }
  const std::vector<std::string>& attributes() const { return attributes_; }
  const std::string& decision() const { return decision_; }

  std::span<const double> row(std::size_t i) const {
    return {values_.data() + i * attributes_.size(), attributes_.size()};
  }
  double value(std::size_t i, std::size_t a) const { return values_[i * attributes_.size() + a]; }
  const std::string& label(std::size_t i) const { return classes_[class_of_[i]]; }

  /// Sorted distinct decision values.
  const std::vector<std::string>& classes() const { return classes_; }
  std::size_t class_of(std::size_t i) const { return class_of_[i]; }
  const std::vector<std::size_t>& class_indices() const { return class_of_; }

  /// Rows in the given order, as a new decision system.
  DecisionSystem subset(std::span<const std::size_t> rows) const;

 private:
  std::vector<std::string> attributes_;
  std::string decision_;
  std::vector<double> values_;
  std::vector<std::string> classes_;
  std::vector<std::size_t> class_of_;
  std::vector<std::string> labels_;
};

}  // namespace cfrs
