#include "cfrs/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>

namespace cfrs {

std::vector<std::size_t> FoldPlan::test_rows(std::size_t fold) const {
  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    if (assignment[i] == fold) rows.push_back(i);
  }
  return rows;
}

std::vector<std::size_t> FoldPlan::train_rows(std::size_t fold) const {
  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    if (assignment[i] != fold) rows.push_back(i);
  }
  return rows;
}

FoldPlan stratified_kfold(std::span<const std::size_t> labels, std::size_t k, std::uint64_t seed) {
  if (k == 0) throw DomainError("fold count must be positive");
  if (k > labels.size()) throw DomainError("more folds than instances");
  std::vector<std::size_t> classes(labels.begin(), labels.end());
  std::sort(classes.begin(), classes.end());
  classes.erase(std::unique(classes.begin(), classes.end()), classes.end());

  FoldPlan plan{k, seed, std::vector<std::size_t>(labels.size(), 0)};
  std::mt19937_64 rng(seed);
  std::size_t offset = 0;
  for (std::size_t c : classes) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (labels[i] == c) members.push_back(i);
    }
    for (std::size_t i = members.size(); i > 1; --i) std::swap(members[i - 1], members[uniform_index(rng, i)]);
    for (std::size_t j = 0; j < members.size(); ++j) plan.assignment[members[j]] = (offset + j) % k;
    offset += members.size();
  }
  return plan;
}

double balanced_accuracy(std::span<const std::size_t> y_true, std::span<const std::size_t> y_pred) {
  if (y_true.empty()) throw DomainError("balanced accuracy of an empty prediction set");
  if (y_true.size() != y_pred.size()) throw DomainError("label vectors differ in length");
  std::vector<std::size_t> classes(y_true.begin(), y_true.end());
  std::sort(classes.begin(), classes.end());
  classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
  std::vector<std::size_t> total(classes.size(), 0);
  std::vector<std::size_t> hit(classes.size(), 0);
  for (std::size_t i = 0; i < y_true.size(); ++i) {
    const auto c = static_cast<std::size_t>(std::lower_bound(classes.begin(), classes.end(), y_true[i]) -
                                            classes.begin());
    ++total[c];
    if (y_pred[i] == y_true[i]) ++hit[c];
  }
  double sum = 0.0;
  for (std::size_t c = 0; c < classes.size(); ++c) {
    sum += static_cast<double>(hit[c]) / static_cast<double>(total[c]);
  }
  return sum / static_cast<double>(classes.size());
}

double balanced_accuracy(std::span<const std::string> y_true, std::span<const std::string> y_pred) {
  if (y_true.size() != y_pred.size()) throw DomainError("label vectors differ in length");
  std::vector<std::string> names(y_true.begin(), y_true.end());
  names.insert(names.end(), y_pred.begin(), y_pred.end());
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());
  auto encode = [&](std::span<const std::string> labels) {
    std::vector<std::size_t> out(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
      out[i] = static_cast<std::size_t>(std::lower_bound(names.begin(), names.end(), labels[i]) - names.begin());
    }
    return out;
  };
  return balanced_accuracy(encode(y_true), encode(y_pred));
}

// ---------------------------------------------------------------------------

double wilcoxon_exact_p(std::span<const std::uint32_t> doubled_ranks, std::uint64_t doubled_w_plus) {
  const std::size_t m = doubled_ranks.size();
  if (m == 0) return 1.0;
  if (m > 62) throw DomainError("exact Wilcoxon enumeration is limited to small samples");
  // Walk all 2^m sign patterns in Gray-code order, flipping one rank per step.
  std::uint64_t sum = 0;
  std::uint64_t at_most = 1;  // the all-negative pattern has sum 0
  std::uint64_t at_least = doubled_w_plus == 0 ? 1 : 0;
  std::uint64_t pattern = 0;
  const std::uint64_t total = std::uint64_t{1} << m;
  for (std::uint64_t step = 1; step < total; ++step) {
    const auto bit = static_cast<std::size_t>(__builtin_ctzll(step));
    pattern ^= std::uint64_t{1} << bit;
    if (pattern & (std::uint64_t{1} << bit)) {
      sum += doubled_ranks[bit];
    } else {
      sum -= doubled_ranks[bit];
    }
    if (sum <= doubled_w_plus) ++at_most;
    if (sum >= doubled_w_plus) ++at_least;
  }
  const double tail = static_cast<double>(std::min(at_most, at_least)) / static_cast<double>(total);
  return std::min(1.0, 2.0 * tail);
}

WilcoxonResult wilcoxon_signed_rank(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw DomainError("Wilcoxon test needs paired samples of equal length");
  std::vector<double> diffs;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    if (!std::isfinite(d)) throw DomainError("Wilcoxon test needs finite samples");
    if (d != 0.0) diffs.push_back(d);
  }
  WilcoxonResult result;
  const std::size_t m = diffs.size();
  result.m = m;
  result.reliable = m >= 5;
  if (m == 0) {
    result.exact = true;
    return result;
  }

  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return std::abs(diffs[x]) < std::abs(diffs[y]); });
  std::vector<std::uint32_t> doubled(m);
  double tie_term = 0.0;
  for (std::size_t i = 0; i < m;) {
    std::size_t j = i;
    while (j + 1 < m && std::abs(diffs[order[j + 1]]) == std::abs(diffs[order[i]])) ++j;
    // Positions i..j (0-based) share the mid-rank ((i+1) + (j+1)) / 2.
    const auto twice_rank = static_cast<std::uint32_t>(i + j + 2);
    for (std::size_t p = i; p <= j; ++p) doubled[order[p]] = twice_rank;
    const double t = static_cast<double>(j - i + 1);
    tie_term += t * t * t - t;
    i = j + 1;
  }

  std::uint64_t doubled_plus = 0;
  std::uint64_t doubled_minus = 0;
  for (std::size_t i = 0; i < m; ++i) {
    if (diffs[i] > 0) {
      doubled_plus += doubled[i];
    } else {
      doubled_minus += doubled[i];
    }
  }
  result.w_plus = static_cast<double>(doubled_plus) / 2.0;
  result.w_minus = static_cast<double>(doubled_minus) / 2.0;
  result.statistic = std::min(result.w_plus, result.w_minus);

  if (m <= kWilcoxonExactLimit) {
    result.exact = true;
    result.p_value = wilcoxon_exact_p(doubled, doubled_plus);
    return result;
  }
  const double dm = static_cast<double>(m);
  const double mean = dm * (dm + 1.0) / 4.0;
  const double variance = dm * (dm + 1.0) * (2.0 * dm + 1.0) / 24.0 - tie_term / 48.0;
  const double z = std::max(std::abs(result.w_plus - mean) - 0.5, 0.0) / std::sqrt(variance);
  result.p_value = std::min(1.0, std::erfc(z / std::sqrt(2.0)));
  return result;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<double> fold_balanced_accuracies(const DecisionSystem& ds, const FoldPlan& plan,
                                             const std::vector<AggregatorSpec>& specs, std::uint64_t seed,
                                             std::vector<std::vector<double>>& per_fold,
                                             std::vector<std::size_t>& usage) {
  per_fold.assign(specs.size(), std::vector<double>(plan.k, 0.0));
  for (std::size_t fold = 0; fold < plan.k; ++fold) {
    const auto train_rows = plan.train_rows(fold);
    const auto test_rows = plan.test_rows(fold);
    const DecisionSystem train = ds.subset(train_rows);
    std::vector<std::size_t> truth(test_rows.size());
    for (std::size_t i = 0; i < test_rows.size(); ++i) truth[i] = ds.class_of(test_rows[i]);

    for (std::size_t s = 0; s < specs.size(); ++s) {
      const FittedModel model = fit(train, specs[s], seed + fold);
      if (specs[s].kind == AggregatorKind::COMB) {
        const auto& kinds = concrete_aggregators();
        const auto j = static_cast<std::size_t>(std::find(kinds.begin(), kinds.end(), model.resolved.kind) -
                                                kinds.begin());
        ++usage[j];
      }
      std::vector<std::size_t> predicted(test_rows.size());
      for (std::size_t i = 0; i < test_rows.size(); ++i) {
        const std::string label = predict(model, ds.row(test_rows[i]));
        predicted[i] = static_cast<std::size_t>(
            std::lower_bound(ds.classes().begin(), ds.classes().end(), label) - ds.classes().begin());
      }
      per_fold[s][fold] = balanced_accuracy(truth, predicted);
    }
  }
  std::vector<double> means(specs.size());
  for (std::size_t s = 0; s < specs.size(); ++s) {
    means[s] = std::accumulate(per_fold[s].begin(), per_fold[s].end(), 0.0) / static_cast<double>(plan.k);
  }
  return means;
}

double median(std::vector<double> v) {
  if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(v.begin(), v.end());
  const std::size_t h = v.size() / 2;
  return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

}  // namespace

EvaluationReport run_benchmark(const std::vector<NamedDataset>& datasets, const std::vector<AggregatorSpec>& specs,
                               std::size_t k, std::uint64_t seed) {
  if (specs.empty()) throw DomainError("benchmark needs at least one aggregator");
  if (k < 2) throw DomainError("cross-validation needs at least two folds");
  EvaluationReport report;
  report.folds = k;
  report.seed = seed;
  for (const auto& s : specs) report.aggregators.push_back(s.name());
  const bool has_comb = std::any_of(specs.begin(), specs.end(),
                                    [](const AggregatorSpec& s) { return s.kind == AggregatorKind::COMB; });
  const double nan = std::numeric_limits<double>::quiet_NaN();

  for (const auto& dataset : datasets) {
    report.datasets.push_back(dataset.name);
    std::vector<std::size_t> usage(concrete_aggregators().size(), 0);
    std::vector<std::vector<double>> per_fold;
    std::vector<double> means(specs.size(), nan);
    try {
      if (dataset.data.classes().size() < 2) throw DomainError("dataset has fewer than two classes");
      const FoldPlan plan = stratified_kfold(dataset.data.class_indices(), k, seed);
      means = fold_balanced_accuracies(dataset.data, plan, specs, seed, per_fold, usage);
    } catch (const std::exception& e) {
      report.failures[dataset.name] = e.what();
      per_fold.assign(specs.size(), std::vector<double>(k, nan));
      std::fill(usage.begin(), usage.end(), 0);
    }
    report.accuracy.push_back(std::move(means));
    report.fold_accuracy.push_back(std::move(per_fold));
    if (has_comb) report.usage.push_back(std::move(usage));
  }

  const std::size_t s_count = specs.size();
  report.wilcoxon.assign(s_count, std::vector<WilcoxonResult>(s_count));
  for (std::size_t s = 0; s < s_count; ++s) {
    for (std::size_t t = 0; t < s_count; ++t) {
      std::vector<double> a;
      std::vector<double> b;
      for (std::size_t d = 0; d < report.datasets.size(); ++d) {
        if (report.failures.count(report.datasets[d])) continue;
        a.push_back(report.accuracy[d][s]);
        b.push_back(report.accuracy[d][t]);
      }
      report.wilcoxon[s][t] = wilcoxon_signed_rank(a, b);
    }
  }
  return report;
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

void write_results_csv(const EvaluationReport& report, std::ostream& out) {
  out << "dataset";
  for (const auto& name : report.aggregators) out << ',' << name;
  out << '\n';
  std::vector<std::vector<double>> columns(report.aggregators.size());
  for (std::size_t d = 0; d < report.datasets.size(); ++d) {
    out << report.datasets[d];
    const bool failed = report.failures.count(report.datasets[d]) > 0;
    for (std::size_t s = 0; s < report.aggregators.size(); ++s) {
      out << ',' << format_double(report.accuracy[d][s]);
      if (!failed) columns[s].push_back(report.accuracy[d][s]);
    }
    out << '\n';
  }
  out << "Mean";
  for (const auto& col : columns) {
    const double m = col.empty() ? std::numeric_limits<double>::quiet_NaN()
                                 : std::accumulate(col.begin(), col.end(), 0.0) / static_cast<double>(col.size());
    out << ',' << format_double(m);
  }
  out << "\nMedian";
  for (const auto& col : columns) out << ',' << format_double(median(col));
  out << '\n';
}

void write_usage_csv(const EvaluationReport& report, std::ostream& out) {
  const auto& kinds = concrete_aggregators();
  out << "dataset";
  for (AggregatorKind kind : kinds) out << ',' << to_string(kind);
  out << '\n';
  std::vector<std::size_t> sums(kinds.size(), 0);
  for (std::size_t d = 0; d < report.usage.size(); ++d) {
    out << report.datasets[d];
    for (std::size_t j = 0; j < kinds.size(); ++j) {
      out << ',' << report.usage[d][j];
      sums[j] += report.usage[d][j];
    }
    out << '\n';
  }
  out << "sum";
  for (std::size_t s : sums) out << ',' << s;
  out << '\n';
}

void write_pvalues_csv(const EvaluationReport& report, std::ostream& out) {
  out << "aggregator";
  for (const auto& name : report.aggregators) out << ',' << name;
  out << '\n';
  for (std::size_t s = 0; s < report.aggregators.size(); ++s) {
    out << report.aggregators[s];
    for (std::size_t t = 0; t < report.aggregators.size(); ++t) out << ',' << format_double(report.wilcoxon[s][t].p_value);
    out << '\n';
  }
}

void write_ranksums_csv(const EvaluationReport& report, std::ostream& out) {
  out << "row,column,w_plus,w_minus,m,p_value,exact,reliable\n";
  for (std::size_t s = 0; s < report.aggregators.size(); ++s) {
    for (std::size_t t = 0; t < report.aggregators.size(); ++t) {
      const auto& w = report.wilcoxon[s][t];
      out << report.aggregators[s] << ',' << report.aggregators[t] << ',' << format_double(w.w_plus) << ','
          << format_double(w.w_minus) << ',' << w.m << ',' << format_double(w.p_value) << ','
          << (w.exact ? "true" : "false") << ',' << (w.reliable ? "true" : "false") << '\n';
    }
  }
}

}  // namespace cfrs
