#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "cfrs/decision_system.hpp"
#include "cfrs/fuzzy.hpp"
#include "cfrs/outlier.hpp"
#include "cfrs/quantifier.hpp"

namespace cfrs {

enum class AggregatorKind { Min, Mino, FR, Avg, Avgo, TS, OWA, OWAo, WOWA, COMB };

std::string to_string(AggregatorKind kind);
/// Case-insensitive: "min", "mino", "fr", ..., "comb".
AggregatorKind parse_aggregator(const std::string& name);
/// The nine concrete strategies COMB chooses from, in table order.
const std::vector<AggregatorKind>& concrete_aggregators();

/// Quantifier family used by the OWA, WOWA and TS strategies. The additive
/// family is instantiated for the size of each aggregated vector.
struct QuantifierSpec {
  enum class Family { additive, quadratic };
  Family family = Family::additive;
  double alpha = 0.3;
  double beta = 0.9;

  Quantifier resolve(std::size_t n) const;
  std::string describe() const;
};

struct AggregatorSpec {
  AggregatorKind kind = AggregatorKind::OWA;
  QuantifierSpec quantifier;
  double t = 0.3;
  double contamination = 0.1;
  TNormKind tnorm = TNormKind::minimum;
  std::size_t lof_k = kDefaultLofNeighbors;

  std::string name() const { return to_string(kind); }
  /// Same parameters, different strategy.
  AggregatorSpec with_kind(AggregatorKind k) const;
};

/// Values to aggregate with, aligned, the outlier degree and the crisp
/// outlier label of the instance each value came from.
struct AggregationInput {
  std::span<const double> values;
  std::span<const double> outlier_degrees;
  std::span<const char> outlier_labels;
};

/// Aggregates a nonempty vector of degrees with one of the concrete
/// strategies. The "o" variants drop labelled entries and fall back to the
/// unrestricted strategy when nothing would remain.
double aggregate(const AggregationInput& input, const AggregatorSpec& spec);

/// Everything prediction needs that is derived from the training data alone.
struct TrainingState {
  std::vector<double> sigmas;
  OutlierScores scores;
  std::vector<char> outlier_mask;
};

TrainingState prepare_training_state(const DecisionSystem& train, std::size_t lof_k, double contamination);

struct FittedModel {
  DecisionSystem train;
  TrainingState state;
  AggregatorSpec requested;
  AggregatorSpec resolved;  // for COMB, the strategy it selected
};

FittedModel fit(const DecisionSystem& train, const AggregatorSpec& spec, std::uint64_t seed);

/// Lower-approximation membership of the instance in every class:
/// Agg over y outside the class of (1 - R(instance, y)).
std::vector<double> class_memberships(const DecisionSystem& train, const TrainingState& state,
                                      std::span<const double> row, const AggregatorSpec& spec);

/// Index into train.classes() with the greatest membership; the first (in
/// sorted label order) wins ties.
std::size_t predict_index(const FittedModel& model, std::span<const double> row);
std::string predict(const FittedModel& model, std::span<const double> row);

/// Leave-one-out balanced accuracy of every candidate on `train`.
std::vector<double> loocv_balanced_accuracy(const DecisionSystem& train, const std::vector<AggregatorSpec>& candidates);

/// Candidate with the best leave-one-out balanced accuracy; ties are
/// resolved uniformly at random from a generator seeded with `seed`.
AggregatorSpec comb_select(const DecisionSystem& train, const std::vector<AggregatorSpec>& candidates,
                           std::uint64_t seed);

/// Uniform index in [0, n). Unlike std::uniform_int_distribution the
/// sequence is identical across standard library implementations.
std::size_t uniform_index(std::mt19937_64& rng, std::size_t n);

}  // namespace cfrs
