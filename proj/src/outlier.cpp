#include "cfrs/outlier.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace cfrs {

std::vector<double> lof_scores_from_distances(std::span<const double> distances, std::size_t n, std::size_t k) {
  if (k == 0) throw DomainError("LOF needs k >= 1");
  if (n < k + 1) throw DomainError("LOF needs at least k + 1 points");
  if (distances.size() != n * n) throw DomainError("distance matrix must be n x n");

  std::vector<std::size_t> neighbors(n * k);
  std::vector<double> k_distance(n);
  std::vector<std::size_t> candidates(n - 1);
  for (std::size_t p = 0; p < n; ++p) {
    const double* row = distances.data() + p * n;
    std::size_t c = 0;
    for (std::size_t q = 0; q < n; ++q) {
      if (q != p) candidates[c++] = q;
    }
    auto closer = [row](std::size_t a, std::size_t b) { return row[a] < row[b] || (row[a] == row[b] && a < b); };
    std::partial_sort(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(k), candidates.end(),
                      closer);
    std::copy_n(candidates.begin(), k, neighbors.begin() + static_cast<std::ptrdiff_t>(p * k));
    k_distance[p] = std::max(row[candidates[k - 1]], kLofDistanceFloor);
  }

  std::vector<double> lrd(n);
  for (std::size_t p = 0; p < n; ++p) {
    double reach_sum = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      const std::size_t o = neighbors[p * k + j];
      reach_sum += std::max({k_distance[o], distances[p * n + o], kLofDistanceFloor});
    }
    lrd[p] = static_cast<double>(k) / reach_sum;
  }

  std::vector<double> lof(n);
  for (std::size_t p = 0; p < n; ++p) {
    double ratio_sum = 0.0;
    for (std::size_t j = 0; j < k; ++j) ratio_sum += lrd[neighbors[p * k + j]];
    lof[p] = ratio_sum / (static_cast<double>(k) * lrd[p]);
  }
  return lof;
}

std::vector<double> lof_scores(std::span<const double> points, std::size_t dims, std::size_t k) {
  if (dims == 0) throw DomainError("LOF needs at least one feature");
  if (points.size() % dims != 0) throw DomainError("point matrix is not rectangular");
  const std::size_t n = points.size() / dims;
  if (k == 0) throw DomainError("LOF needs k >= 1");
  if (n < k + 1) throw DomainError("LOF needs at least k + 1 points");
  std::vector<double> d(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double ss = 0.0;
      for (std::size_t a = 0; a < dims; ++a) {
        const double diff = points[i * dims + a] - points[j * dims + a];
        ss += diff * diff;
      }
      d[i * n + j] = d[j * n + i] = std::sqrt(ss);
    }
  }
  return lof_scores_from_distances(d, n, k);
}

std::vector<double> normalize_scores(std::span<const double> raw) {
  if (raw.empty()) throw DomainError("cannot normalise an empty score vector");
  const double n = static_cast<double>(raw.size());
  const double mean = std::accumulate(raw.begin(), raw.end(), 0.0) / n;
  double ss = 0.0;
  for (double s : raw) ss += (s - mean) * (s - mean);
  const double sd = std::sqrt(ss / n);
  std::vector<double> out(raw.size(), 0.0);
  // Scores equal up to rounding count as constant.
  if (!(sd > 1e-12 * std::max(1.0, std::abs(mean)))) return out;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    out[i] = std::clamp(std::erf((raw[i] - mean) / (sd * std::sqrt(2.0))), 0.0, 1.0);
  }
  return out;
}

OutlierScores per_class_scores(const DecisionSystem& ds, std::size_t k) {
  if (k == 0) throw DomainError("LOF needs k >= 1");
  const std::size_t dims = ds.attribute_count();
  OutlierScores scores;
  scores.raw.assign(ds.size(), 1.0);
  scores.normalized.assign(ds.size(), 0.0);

  for (std::size_t c = 0; c < ds.classes().size(); ++c) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < ds.size(); ++i) {
      if (ds.class_of(i) == c) members.push_back(i);
    }
    if (members.size() < 2) continue;
    std::vector<double> points;
    points.reserve(members.size() * dims);
    for (std::size_t i : members) {
      auto row = ds.row(i);
      points.insert(points.end(), row.begin(), row.end());
    }
    const std::size_t class_k = std::min(k, members.size() - 1);
    const auto raw = lof_scores(points, dims, class_k);
    const auto normalized = normalize_scores(raw);
    for (std::size_t j = 0; j < members.size(); ++j) {
      scores.raw[members[j]] = raw[j];
      scores.normalized[members[j]] = normalized[j];
    }
  }
  return scores;
}

SubsetView label_outliers(std::span<const double> normalized, double contamination) {
  if (!(contamination >= 0.0 && contamination < 1.0)) throw DomainError("contamination must be in [0,1)");
  const std::size_t n = normalized.size();
  const auto count = static_cast<std::size_t>(std::ceil(contamination * static_cast<double>(n) - 1e-9));
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return normalized[a] > normalized[b]; });
  order.resize(std::min(count, n));
  return SubsetView(std::move(order));
}

void label_outliers(OutlierScores& scores, double contamination) {
  scores.labels = label_outliers(scores.normalized, contamination);
}

}  // namespace cfrs
