#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "cfrs/decision_system.hpp"
#include "cfrs/fuzzy.hpp"
#include "cfrs/measure.hpp"

namespace cfrs {

/// Pairwise similarity degrees over n instances, stored densely.
class SimilarityRelation {
 public:
  /// Row-major n x n matrix of degrees in [0,1].
  SimilarityRelation(std::size_t n, std::vector<double> matrix);

  std::size_t size() const { return n_; }
  double operator()(std::size_t x, std::size_t y) const { return matrix_[x * n_ + y]; }

 private:
  std::size_t n_;
  std::vector<double> matrix_;
};

/// Sample standard deviation (divisor n - 1) of every conditional attribute.
std::vector<double> attribute_sigmas(const DecisionSystem& ds);

/// max(1 - |a - b| / sigma, 0); for sigma == 0 this is 1 when a == b, else 0.
double attribute_similarity(double a, double b, double sigma);

/// Mean over attributes of attribute_similarity between two rows.
double row_similarity(std::span<const double> x, std::span<const double> y, std::span<const double> sigmas);

/// Similarity relation over the instances of ds, with sigmas taken from ds itself.
SimilarityRelation build_similarity(const DecisionSystem& ds);

/// R(test, y) for every training instance y, using the training sigmas.
std::vector<double> similarity_to_test(const DecisionSystem& train, std::span<const double> test_row,
                                       std::span<const double> sigmas);

/// Choquet lower approximation of A at y: integral of I(R(x,y), A(x)) d mu_l(x).
double lower_approximation(const SimilarityRelation& r, const FuzzySet& a, const Measure& mu_l,
                           const Implicator& implicator, std::size_t y);

/// Choquet upper approximation of A at y: integral of C(R(x,y), A(x)) d mu_u(x).
double upper_approximation(const SimilarityRelation& r, const FuzzySet& a, const Measure& mu_u,
                           const Conjunctor& conjunctor, std::size_t y);

}  // namespace cfrs
