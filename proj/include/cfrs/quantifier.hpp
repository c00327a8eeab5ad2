#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "cfrs/fuzzy.hpp"

namespace cfrs {

/// Nonnegative weights summing to one (within 1e-9).
class WeightVector {
 public:
  explicit WeightVector(std::vector<double> weights);

  static WeightVector uniform(std::size_t n);
  /// W_L^add: w_i = 2i / (n(n+1)), increasing towards the last position.
  static WeightVector additive(std::size_t n);

  std::size_t size() const { return weights_.size(); }
  double operator[](std::size_t i) const { return weights_[i]; }
  std::span<const double> values() const { return weights_; }
  WeightVector reversed() const;

 private:
  std::vector<double> weights_;
};

/// Regular increasing monotone quantifier Q: [0,1] -> [0,1], Q(0)=0, Q(1)=1.
///
/// Every instance is checked for monotonicity and the boundary values on a
/// 1001-point grid when it is created.
class Quantifier {
 public:
  enum class Kind { universal, existential, quadratic, additive, step };

  static Quantifier universal();
  static Quantifier existential();
  /// Smooth "most"/"some" style quantifier; requires 0 <= alpha < beta <= 1.
  static Quantifier quadratic(double alpha, double beta);
  /// Q_add(x) = x(xn + 1) / (n + 1), associated with W_L^add on n elements.
  static Quantifier additive(std::size_t n);
  /// Right-continuous step interpolant Q(p) = sum_{i <= p n} w_i.
  static Quantifier step(WeightVector weights);

  Kind kind() const { return kind_; }
  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  std::size_t n() const { return n_; }
  std::string describe() const;

  /// Throws DomainError when p is outside [0,1].
  double operator()(double p) const;
  /// Evaluation without the domain check; p must already be in [0,1].
  double eval_unchecked(double p) const;

 private:
  Quantifier(Kind kind) : kind_(kind) {}  // NOLINT(google-explicit-constructor)
  void validate() const;

  Kind kind_;
  double alpha_ = 0.0;
  double beta_ = 1.0;
  std::size_t n_ = 0;
  std::vector<double> cumulative_;  // step kind: Q(i/n) for i = 0..n
};

double eval_quantifier(const Quantifier& q, double p);

/// w_i = Q(i/n) - Q((i-1)/n), i = 1..n.
WeightVector weights_from_quantifier(const Quantifier& q, std::size_t n);
Quantifier quantifier_from_weights(const WeightVector& w);

/// Degree to which OWA_w behaves like the maximum. Requires n >= 2.
double orness(const WeightVector& w);
double andness(const WeightVector& w);

/// Zadeh's model: Q(|A| / |X|) with the sigma-count |A|.
double zadeh_eval(const Quantifier& q, const FuzzySet& a);
/// Yager's model: OWA of A's memberships with the weights associated to Q.
double yager_eval(const Quantifier& q, const FuzzySet& a);

}  // namespace cfrs
