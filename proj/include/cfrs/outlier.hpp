#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "cfrs/decision_system.hpp"
#include "cfrs/measure.hpp"

namespace cfrs {

/// Smallest distance used by LOF; duplicate points would otherwise give
/// infinite local densities.
inline constexpr double kLofDistanceFloor = 1e-12;
inline constexpr std::size_t kDefaultLofNeighbors = 20;

struct OutlierScores {
  std::vector<double> raw;         // LOF values
  std::vector<double> normalized;  // Gaussian-scaled into [0,1]
  std::optional<SubsetView> labels;
};

/// Local Outlier Factor of each point. `points` is row-major with `dims`
/// columns; distances are Euclidean. The neighbourhood of a point is its k
/// nearest other points, ties broken by index. Requires at least k + 1 points.
std::vector<double> lof_scores(std::span<const double> points, std::size_t dims, std::size_t k);

/// LOF from a precomputed row-major n x n distance matrix.
std::vector<double> lof_scores_from_distances(std::span<const double> distances, std::size_t n, std::size_t k);

/// max(0, erf((s - mean) / (std sqrt 2))) with the population mean and
/// standard deviation of `raw`; a constant input (sd at most 1e-12 relative
/// to the mean) maps to all zeros.
std::vector<double> normalize_scores(std::span<const double> raw);

/// LOF fitted separately on the members of each class, then normalised per
/// class. k is clamped to (class size - 1); a singleton class scores raw 1,
/// normalised 0.
OutlierScores per_class_scores(const DecisionSystem& ds, std::size_t k = kDefaultLofNeighbors);

/// The ceil(contamination n) instances with the highest normalised score;
/// equal scores are taken in index order.
SubsetView label_outliers(std::span<const double> normalized, double contamination);
void label_outliers(OutlierScores& scores, double contamination);

}  // namespace cfrs
