#include "cfrs/approximation.hpp"

#include <algorithm>
#include <cmath>

#include "cfrs/choquet.hpp"

namespace cfrs {

SimilarityRelation::SimilarityRelation(std::size_t n, std::vector<double> matrix)
    : n_(n), matrix_(std::move(matrix)) {
  if (n_ == 0) throw DomainError("similarity relation on an empty universe");
  if (matrix_.size() != n_ * n_) throw DomainError("similarity matrix must be n x n");
  for (double v : matrix_) check_degree(v, "similarity");
}

std::vector<double> attribute_sigmas(const DecisionSystem& ds) {
  const std::size_t n = ds.size();
  const std::size_t d = ds.attribute_count();
  std::vector<double> sigmas(d, 0.0);
  if (n < 2) return sigmas;
  for (std::size_t a = 0; a < d; ++a) {
    double mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) mean += ds.value(i, a);
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double diff = ds.value(i, a) - mean;
      ss += diff * diff;
    }
    sigmas[a] = std::sqrt(ss / static_cast<double>(n - 1));
  }
  return sigmas;
}

double attribute_similarity(double a, double b, double sigma) {
  if (sigma > 0.0) return std::max(1.0 - std::abs(a - b) / sigma, 0.0);
  return a == b ? 1.0 : 0.0;
}

double row_similarity(std::span<const double> x, std::span<const double> y, std::span<const double> sigmas) {
  double sum = 0.0;
  for (std::size_t a = 0; a < sigmas.size(); ++a) sum += attribute_similarity(x[a], y[a], sigmas[a]);
  return std::clamp(sum / static_cast<double>(sigmas.size()), 0.0, 1.0);
}

SimilarityRelation build_similarity(const DecisionSystem& ds) {
  if (ds.attribute_count() == 0) throw DomainError("similarity needs at least one conditional attribute");
  if (ds.size() < 2) throw DomainError("similarity needs at least two instances");
  const std::size_t n = ds.size();
  const auto sigmas = attribute_sigmas(ds);
  std::vector<double> m(n * n, 1.0);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = x + 1; y < n; ++y) {
      const double r = row_similarity(ds.row(x), ds.row(y), sigmas);
      m[x * n + y] = r;
      m[y * n + x] = r;
    }
  }
  return SimilarityRelation(n, std::move(m));
}

std::vector<double> similarity_to_test(const DecisionSystem& train, std::span<const double> test_row,
                                       std::span<const double> sigmas) {
  if (train.attribute_count() == 0) throw DomainError("similarity needs at least one conditional attribute");
  if (test_row.size() != train.attribute_count()) {
    throw DomainError("test instance is missing conditional attributes");
  }
  if (sigmas.size() != train.attribute_count()) throw DomainError("one sigma per attribute is required");
  std::vector<double> out(train.size());
  for (std::size_t y = 0; y < train.size(); ++y) out[y] = row_similarity(test_row, train.row(y), sigmas);
  return out;
}

namespace {

void check_shared_universe(const SimilarityRelation& r, const FuzzySet& a, const Measure& mu, std::size_t y) {
  if (r.size() != a.size() || mu.size() != a.size()) {
    throw DomainError("relation, fuzzy set and measure must share a universe");
  }
  if (y >= r.size()) throw DomainError("element outside the universe");
}

}  // namespace

double lower_approximation(const SimilarityRelation& r, const FuzzySet& a, const Measure& mu_l,
                           const Implicator& implicator, std::size_t y) {
  check_shared_universe(r, a, mu_l, y);
  std::vector<double> f(a.size());
  for (std::size_t x = 0; x < a.size(); ++x) f[x] = implicator(r(x, y), a[x]);
  return std::clamp(choquet_integral(f, mu_l), 0.0, 1.0);
}

double upper_approximation(const SimilarityRelation& r, const FuzzySet& a, const Measure& mu_u,
                           const Conjunctor& conjunctor, std::size_t y) {
  check_shared_universe(r, a, mu_u, y);
  std::vector<double> f(a.size());
  for (std::size_t x = 0; x < a.size(); ++x) f[x] = conjunctor(r(x, y), a[x]);
  return std::clamp(choquet_integral(f, mu_u), 0.0, 1.0);
}

}  // namespace cfrs
