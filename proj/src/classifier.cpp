#include "cfrs/classifier.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "cfrs/approximation.hpp"
#include "cfrs/choquet.hpp"
#include "cfrs/evaluation.hpp"
#include "cfrs/measure.hpp"

namespace cfrs {

std::string to_string(AggregatorKind kind) {
  switch (kind) {
    case AggregatorKind::Min:
      return "Min";
    case AggregatorKind::Mino:
      return "Mino";
    case AggregatorKind::FR:
      return "FR";
    case AggregatorKind::Avg:
      return "Avg";
    case AggregatorKind::Avgo:
      return "Avgo";
    case AggregatorKind::TS:
      return "TS";
    case AggregatorKind::OWA:
      return "OWA";
    case AggregatorKind::OWAo:
      return "OWAo";
    case AggregatorKind::WOWA:
      return "WOWA";
    case AggregatorKind::COMB:
      return "COMB";
  }
  return "?";
}

AggregatorKind parse_aggregator(const std::string& name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  for (AggregatorKind kind : concrete_aggregators()) {
    std::string candidate = to_string(kind);
    std::transform(candidate.begin(), candidate.end(), candidate.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    if (candidate == lower) return kind;
  }
  if (lower == "comb") return AggregatorKind::COMB;
  throw DomainError("unknown aggregator '" + name + "'");
}

const std::vector<AggregatorKind>& concrete_aggregators() {
  static const std::vector<AggregatorKind> kinds = {
      AggregatorKind::Min, AggregatorKind::Mino, AggregatorKind::FR,   AggregatorKind::Avg,  AggregatorKind::Avgo,
      AggregatorKind::TS,  AggregatorKind::OWA,  AggregatorKind::OWAo, AggregatorKind::WOWA,
  };
  return kinds;
}

Quantifier QuantifierSpec::resolve(std::size_t n) const {
  if (family == Family::additive) return Quantifier::additive(n);
  return Quantifier::quadratic(alpha, beta);
}

std::string QuantifierSpec::describe() const {
  if (family == Family::additive) return "additive";
  std::ostringstream os;
  os.precision(17);
  os << "quadratic(" << alpha << "," << beta << ")";
  return os.str();
}

AggregatorSpec AggregatorSpec::with_kind(AggregatorKind k) const {
  AggregatorSpec copy = *this;
  copy.kind = k;
  return copy;
}

// ---------------------------------------------------------------------------

namespace {

double minimum(std::span<const double> v) { return *std::min_element(v.begin(), v.end()); }

double mean(std::span<const double> v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double owa_choquet(std::span<const double> v, const QuantifierSpec& q) {
  return choquet_integral(v, symmetric_from_quantifier(q.resolve(v.size()), v.size()));
}

AggregatorKind unrestricted(AggregatorKind kind) {
  switch (kind) {
    case AggregatorKind::Mino:
      return AggregatorKind::Min;
    case AggregatorKind::Avgo:
      return AggregatorKind::Avg;
    case AggregatorKind::OWAo:
      return AggregatorKind::OWA;
    default:
      return kind;
  }
}

}  // namespace

double aggregate(const AggregationInput& input, const AggregatorSpec& spec) {
  const auto values = input.values;
  if (values.empty()) throw DomainError("cannot aggregate an empty vector");
  const bool needs_degrees = spec.kind == AggregatorKind::FR || spec.kind == AggregatorKind::WOWA ||
                             spec.kind == AggregatorKind::TS;
  const bool needs_labels = spec.kind == AggregatorKind::Mino || spec.kind == AggregatorKind::Avgo ||
                            spec.kind == AggregatorKind::OWAo;
  if (needs_degrees && input.outlier_degrees.size() != values.size()) {
    throw DomainError("outlier degrees are not aligned with the values");
  }
  if (needs_labels && input.outlier_labels.size() != values.size()) {
    throw DomainError("outlier labels are not aligned with the values");
  }

  switch (spec.kind) {
    case AggregatorKind::Min:
      return minimum(values);
    case AggregatorKind::Avg:
      return mean(values);
    case AggregatorKind::OWA:
      return owa_choquet(values, spec.quantifier);
    case AggregatorKind::FR:
      return choquet_integral(values, fuzzy_removal(input.outlier_degrees, spec.tnorm));
    case AggregatorKind::WOWA: {
      const double total = std::accumulate(input.outlier_degrees.begin(), input.outlier_degrees.end(), 0.0);
      if (!(static_cast<double>(values.size()) - total > 0.0)) return owa_choquet(values, spec.quantifier);
      return choquet_integral(values, wowa_measure(spec.quantifier.resolve(values.size()), input.outlier_degrees));
    }
    case AggregatorKind::TS:
      return choquet_integral(values, ordered_two_symmetric(spec.quantifier.resolve(values.size()),
                                                            input.outlier_degrees, spec.t, spec.contamination));
    case AggregatorKind::Mino:
    case AggregatorKind::Avgo:
    case AggregatorKind::OWAo: {
      std::vector<double> kept;
      kept.reserve(values.size());
      for (std::size_t i = 0; i < values.size(); ++i) {
        if (!input.outlier_labels[i]) kept.push_back(values[i]);
      }
      const AggregatorKind base = unrestricted(spec.kind);
      if (kept.empty()) return aggregate({values, {}, {}}, spec.with_kind(base));
      return aggregate({kept, {}, {}}, spec.with_kind(base));
    }
    case AggregatorKind::COMB:
      throw DomainError("COMB must be resolved to a concrete aggregator before aggregating");
  }
  throw DomainError("unknown aggregator");
}

// ---------------------------------------------------------------------------

TrainingState prepare_training_state(const DecisionSystem& train, std::size_t lof_k, double contamination) {
  TrainingState state;
  state.sigmas = attribute_sigmas(train);
  state.scores = per_class_scores(train, lof_k);
  label_outliers(state.scores, contamination);
  state.outlier_mask.assign(train.size(), 0);
  for (std::size_t i : state.scores.labels->members()) state.outlier_mask[i] = 1;
  return state;
}

std::vector<double> class_memberships(const DecisionSystem& train, const TrainingState& state,
                                      std::span<const double> row, const AggregatorSpec& spec) {
  const auto similarity = similarity_to_test(train, row, state.sigmas);
  const std::size_t class_count = train.classes().size();
  std::vector<double> memberships(class_count);
  std::vector<double> values;
  std::vector<double> degrees;
  std::vector<char> labels;
  for (std::size_t c = 0; c < class_count; ++c) {
    values.clear();
    degrees.clear();
    labels.clear();
    for (std::size_t y = 0; y < train.size(); ++y) {
      if (train.class_of(y) == c) continue;
      values.push_back(1.0 - similarity[y]);
      degrees.push_back(state.scores.normalized[y]);
      labels.push_back(state.outlier_mask[y]);
    }
    if (values.empty()) throw DomainError("class '" + train.classes()[c] + "' covers the whole training set");
    memberships[c] = aggregate({values, degrees, labels}, spec);
  }
  return memberships;
}

namespace {

std::size_t argmax_first(const std::vector<double>& v) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i] > v[best]) best = i;
  }
  return best;
}

void require_classifiable(const DecisionSystem& train) {
  if (train.classes().size() < 2) throw DomainError("training data needs at least two classes");
  if (train.attribute_count() == 0) throw DomainError("training data has no conditional attributes");
}

}  // namespace

std::size_t uniform_index(std::mt19937_64& rng, std::size_t n) {
  if (n == 0) throw DomainError("cannot draw from an empty range");
  const std::uint64_t range = n;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % range;
  std::uint64_t draw = rng();
  while (draw >= limit) draw = rng();
  return static_cast<std::size_t>(draw % range);
}

std::vector<double> loocv_balanced_accuracy(const DecisionSystem& train, const std::vector<AggregatorSpec>& candidates) {
  require_classifiable(train);
  std::vector<std::size_t> class_sizes(train.classes().size(), 0);
  for (std::size_t c : train.class_indices()) ++class_sizes[c];
  if (*std::min_element(class_sizes.begin(), class_sizes.end()) < 2) {
    throw DomainError("leave-one-out needs at least two instances per class");
  }

  const std::size_t n = train.size();
  std::vector<std::vector<std::size_t>> predictions(candidates.size(), std::vector<std::size_t>(n));
  std::vector<std::size_t> rows;
  rows.reserve(n - 1);
  for (std::size_t held_out = 0; held_out < n; ++held_out) {
    rows.clear();
    for (std::size_t i = 0; i < n; ++i) {
      if (i != held_out) rows.push_back(i);
    }
    const DecisionSystem rest = train.subset(rows);
    // Candidates usually share LOF settings; prepare each distinct setting once.
    std::vector<std::pair<std::pair<std::size_t, double>, TrainingState>> states;
    for (std::size_t s = 0; s < candidates.size(); ++s) {
      const auto key = std::make_pair(candidates[s].lof_k, candidates[s].contamination);
      auto it = std::find_if(states.begin(), states.end(), [&](const auto& e) { return e.first == key; });
      if (it == states.end()) {
        states.emplace_back(key, prepare_training_state(rest, key.first, key.second));
        it = std::prev(states.end());
      }
      const auto memberships = class_memberships(rest, it->second, train.row(held_out), candidates[s]);
      const std::string& label = rest.classes()[argmax_first(memberships)];
      predictions[s][held_out] = static_cast<std::size_t>(
          std::lower_bound(train.classes().begin(), train.classes().end(), label) - train.classes().begin());
    }
  }

  std::vector<double> accuracy(candidates.size());
  for (std::size_t s = 0; s < candidates.size(); ++s) {
    accuracy[s] = balanced_accuracy(train.class_indices(), predictions[s]);
  }
  return accuracy;
}

AggregatorSpec comb_select(const DecisionSystem& train, const std::vector<AggregatorSpec>& candidates,
                           std::uint64_t seed) {
  if (candidates.empty()) throw DomainError("COMB needs at least one candidate");
  for (const auto& c : candidates) {
    if (c.kind == AggregatorKind::COMB) throw DomainError("COMB candidates must be concrete aggregators");
  }
  if (candidates.size() == 1) return candidates.front();
  const auto accuracy = loocv_balanced_accuracy(train, candidates);
  const double best = *std::max_element(accuracy.begin(), accuracy.end());
  std::vector<std::size_t> tied;
  for (std::size_t s = 0; s < accuracy.size(); ++s) {
    if (accuracy[s] == best) tied.push_back(s);
  }
  std::mt19937_64 rng(seed);
  return candidates[tied[uniform_index(rng, tied.size())]];
}

FittedModel fit(const DecisionSystem& train, const AggregatorSpec& spec, std::uint64_t seed) {
  require_classifiable(train);
  AggregatorSpec resolved = spec;
  if (spec.kind == AggregatorKind::COMB) {
    std::vector<AggregatorSpec> candidates;
    for (AggregatorKind kind : concrete_aggregators()) candidates.push_back(spec.with_kind(kind));
    resolved = comb_select(train, candidates, seed);
  }
  TrainingState state = prepare_training_state(train, resolved.lof_k, resolved.contamination);
  return FittedModel{train, std::move(state), spec, resolved};
}

std::size_t predict_index(const FittedModel& model, std::span<const double> row) {
  return argmax_first(class_memberships(model.train, model.state, row, model.resolved));
}

std::string predict(const FittedModel& model, std::span<const double> row) {
  return model.train.classes()[predict_index(model, row)];
}

}  // namespace cfrs
