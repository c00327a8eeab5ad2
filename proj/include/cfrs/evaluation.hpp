#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "cfrs/classifier.hpp"
#include "cfrs/decision_system.hpp"

namespace cfrs {

struct FoldPlan {
  std::size_t k = 0;
  std::uint64_t seed = 0;
  std::vector<std::size_t> assignment;  // fold index per instance

  std::vector<std::size_t> test_rows(std::size_t fold) const;
  std::vector<std::size_t> train_rows(std::size_t fold) const;
};

/// Stratified k-fold split: each class is shuffled with a generator seeded by
/// `seed` and dealt round-robin over the folds, continuing where the previous
/// class stopped so fold sizes stay balanced.
FoldPlan stratified_kfold(std::span<const std::size_t> labels, std::size_t k, std::uint64_t seed);

/// Unweighted mean of per-class recall over the classes present in y_true.
double balanced_accuracy(std::span<const std::size_t> y_true, std::span<const std::size_t> y_pred);
double balanced_accuracy(std::span<const std::string> y_true, std::span<const std::string> y_pred);

struct WilcoxonResult {
  double w_plus = 0.0;   // rank sum of positive differences a - b
  double w_minus = 0.0;  // rank sum of negative differences
  double statistic = 0.0;  // min(w_plus, w_minus)
  double p_value = 1.0;    // two-sided
  std::size_t m = 0;       // number of nonzero differences
  bool exact = false;
  bool reliable = false;   // false when m < 5
};

/// Largest number of nonzero differences handled by exact enumeration.
inline constexpr std::size_t kWilcoxonExactLimit = 25;

/// Two-sided Wilcoxon signed-rank test on paired samples. Zero differences
/// are dropped and tied magnitudes get mid-ranks. For m <= 25 the p-value is
/// exact, from all 2^m sign patterns; above that a normal approximation with
/// tie and continuity correction is used.
WilcoxonResult wilcoxon_signed_rank(std::span<const double> a, std::span<const double> b);

/// Exact two-sided p-value of the signed-rank statistic by enumerating all
/// sign assignments of the given ranks (twice the rank, as integers).
double wilcoxon_exact_p(std::span<const std::uint32_t> doubled_ranks, std::uint64_t doubled_w_plus);

struct NamedDataset {
  std::string name;
  DecisionSystem data;
};

struct EvaluationReport {
  std::size_t folds = 0;
  std::uint64_t seed = 0;
  std::vector<std::string> datasets;
  std::vector<std::string> aggregators;
  /// accuracy[d][s]: mean fold balanced accuracy; NaN when the dataset failed.
  std::vector<std::vector<double>> accuracy;
  /// fold_accuracy[d][s][f]
  std::vector<std::vector<std::vector<double>>> fold_accuracy;
  /// usage[d][j]: folds where COMB chose concrete_aggregators()[j]; empty without COMB.
  std::vector<std::vector<std::size_t>> usage;
  /// wilcoxon[s][t]: test over per-dataset means of aggregator s versus t.
  std::vector<std::vector<WilcoxonResult>> wilcoxon;
  std::map<std::string, std::string> failures;  // dataset -> message
};

EvaluationReport run_benchmark(const std::vector<NamedDataset>& datasets, const std::vector<AggregatorSpec>& specs,
                               std::size_t k, std::uint64_t seed);

/// Degrees printed with 17 significant digits.
std::string format_double(double x);

void write_results_csv(const EvaluationReport& report, std::ostream& out);
void write_usage_csv(const EvaluationReport& report, std::ostream& out);
void write_pvalues_csv(const EvaluationReport& report, std::ostream& out);
void write_ranksums_csv(const EvaluationReport& report, std::ostream& out);

}  // namespace cfrs
