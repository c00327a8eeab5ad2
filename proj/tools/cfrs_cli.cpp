// Command-line driver: outlier scores, train/test classification,
// cross-validation and the multi-dataset benchmark.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "cfrs/classifier.hpp"
#include "cfrs/csv.hpp"
#include "cfrs/evaluation.hpp"
#include "cfrs/outlier.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

struct RunConfig {
  std::vector<std::string> datasets;
  std::string test;
  std::string decision_col;
  std::vector<std::string> aggregators;
  std::string quantifier = "additive";
  double alpha = 0.3;
  double beta = 0.9;
  double t = 0.3;
  double contamination = 0.1;
  std::size_t lof_k = cfrs::kDefaultLofNeighbors;
  std::string tnorm = "minimum";
  std::string implicator = "kleene_dienes";
  std::size_t folds = 5;
  std::uint64_t seed = 42;
  std::string out_dir = ".";
};

/// Failure in one named stage of a run; the stage picks the exit code.
struct StageError {
  std::string stage;
  std::string message;
  int code;
};

[[noreturn]] void fail(const std::string& stage, const std::string& message, int code) {
  throw StageError{stage, message, code};
}

cfrs::AggregatorSpec base_spec(const RunConfig& cfg) {
  cfrs::AggregatorSpec spec;
  try {
    if (cfg.quantifier == "additive") {
      spec.quantifier.family = cfrs::QuantifierSpec::Family::additive;
    } else if (cfg.quantifier == "quadratic") {
      spec.quantifier.family = cfrs::QuantifierSpec::Family::quadratic;
      cfrs::Quantifier::quadratic(cfg.alpha, cfg.beta);  // validates alpha < beta
    } else {
      fail("config", "unknown quantifier family '" + cfg.quantifier + "'", 2);
    }
    spec.quantifier.alpha = cfg.alpha;
    spec.quantifier.beta = cfg.beta;
    spec.tnorm = cfrs::parse_tnorm(cfg.tnorm);
    cfrs::parse_implicator(cfg.implicator);
  } catch (const cfrs::DomainError& e) {
    fail("config", e.what(), 2);
  }
  if (!(cfg.t >= 0.0 && cfg.t <= 1.0)) fail("config", "--t must lie in [0,1]", 2);
  if (!(cfg.contamination >= 0.0 && cfg.contamination < 1.0)) fail("config", "--contamination must lie in [0,1)", 2);
  if (cfg.lof_k == 0) fail("config", "--lof-k must be positive", 2);
  spec.t = cfg.t;
  spec.contamination = cfg.contamination;
  spec.lof_k = cfg.lof_k;
  return spec;
}

std::vector<cfrs::AggregatorSpec> specs_of(const RunConfig& cfg, const std::vector<std::string>& fallback) {
  const auto base = base_spec(cfg);
  const auto& names = cfg.aggregators.empty() ? fallback : cfg.aggregators;
  std::vector<cfrs::AggregatorSpec> specs;
  for (const auto& name : names) {
    try {
      specs.push_back(base.with_kind(cfrs::parse_aggregator(name)));
    } catch (const cfrs::DomainError& e) {
      fail("config", e.what(), 2);
    }
  }
  return specs;
}

cfrs::DecisionSystem load(const std::string& path, const std::string& decision_col) {
  try {
    return cfrs::ingest_csv(path, decision_col);
  } catch (const cfrs::ConfigError& e) {
    fail("config", path + ": " + e.what(), 2);
  } catch (const std::exception& e) {
    fail("ingest", path + ": " + e.what(), 3);
  }
}

std::string dataset_name(const std::string& path) { return fs::path(path).stem().string(); }

ordered_json config_json(const RunConfig& cfg, const std::string& command) {
  ordered_json j;
  j["command"] = command;
  j["datasets"] = cfg.datasets;
  if (!cfg.test.empty()) j["test"] = cfg.test;
  j["decision_col"] = cfg.decision_col.empty() ? "(last column)" : cfg.decision_col;
  j["aggregators"] = cfg.aggregators;
  j["quantifier"] = cfg.quantifier;
  j["alpha"] = cfg.alpha;
  j["beta"] = cfg.beta;
  j["t"] = cfg.t;
  j["contamination"] = cfg.contamination;
  j["lof_k"] = cfg.lof_k;
  j["tnorm"] = cfg.tnorm;
  j["implicator"] = cfg.implicator;
  j["folds"] = cfg.folds;
  j["seed"] = cfg.seed;
  return j;
}

class OutputDir {
 public:
  explicit OutputDir(const std::string& dir) : dir_(dir) {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec) fail("write", "cannot create " + dir + ": " + ec.message(), 5);
  }

  /// Writes the whole file from `body`, failing the run if anything is lost.
  template <class Fn>
  void write(const std::string& name, Fn&& body) {
    const fs::path path = dir_ / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) fail("write", "cannot open " + path.string(), 5);
    body(out);
    out.flush();
    if (!out) fail("write", "error while writing " + path.string(), 5);
  }

  void write_json(const std::string& name, const ordered_json& j) {
    write(name, [&](std::ostream& out) { out << j.dump(2) << '\n'; });
  }

 private:
  fs::path dir_;
};

// ---------------------------------------------------------------------------

void cmd_lof_scores(const RunConfig& cfg) {
  if (cfg.datasets.size() != 1) fail("config", "lof-scores takes exactly one --dataset", 2);
  base_spec(cfg);
  const auto ds = load(cfg.datasets[0], cfg.decision_col);
  cfrs::OutlierScores scores;
  try {
    scores = cfrs::per_class_scores(ds, cfg.lof_k);
    cfrs::label_outliers(scores, cfg.contamination);
  } catch (const std::exception& e) {
    fail("score", e.what(), 4);
  }
  OutputDir out(cfg.out_dir);
  out.write("lof_scores.csv", [&](std::ostream& os) {
    os << "instance_id,class,raw_lof,normalized,label\n";
    for (std::size_t i = 0; i < ds.size(); ++i) {
      os << 'x' << (i + 1) << ',' << ds.label(i) << ',' << cfrs::format_double(scores.raw[i]) << ','
         << cfrs::format_double(scores.normalized[i]) << ',' << (scores.labels->contains(i) ? 1 : 0) << '\n';
    }
  });
  auto summary = config_json(cfg, "lof-scores");
  summary["instances"] = ds.size();
  summary["labelled_outliers"] = scores.labels->size();
  out.write_json("summary.json", summary);
}

void cmd_classify(const RunConfig& cfg) {
  if (cfg.datasets.size() != 1) fail("config", "classify takes exactly one --dataset (training data)", 2);
  if (cfg.test.empty()) fail("config", "classify needs --test", 2);
  const auto specs = specs_of(cfg, {"owa"});
  if (specs.size() != 1) fail("config", "classify takes one --aggregator", 2);
  const auto train = load(cfg.datasets[0], cfg.decision_col);
  const auto test = load(cfg.test, cfg.decision_col);
  if (test.attributes() != train.attributes()) fail("config", "training and test attributes differ", 2);

  std::vector<std::string> predicted(test.size()), actual(test.size());
  cfrs::AggregatorSpec resolved;
  try {
    const auto model = cfrs::fit(train, specs[0], cfg.seed);
    resolved = model.resolved;
    for (std::size_t i = 0; i < test.size(); ++i) {
      predicted[i] = cfrs::predict(model, test.row(i));
      actual[i] = test.label(i);
    }
  } catch (const std::exception& e) {
    fail("classify", e.what(), 4);
  }
  OutputDir out(cfg.out_dir);
  out.write("predictions.csv", [&](std::ostream& os) {
    os << "instance_id,actual,predicted\n";
    for (std::size_t i = 0; i < test.size(); ++i) os << 'x' << (i + 1) << ',' << actual[i] << ',' << predicted[i] << '\n';
  });
  auto summary = config_json(cfg, "classify");
  summary["aggregator"] = specs[0].name();
  summary["resolved_aggregator"] = resolved.name();
  summary["balanced_accuracy"] = cfrs::balanced_accuracy(actual, predicted);
  out.write_json("summary.json", summary);
}

cfrs::EvaluationReport benchmark(const RunConfig& cfg, const std::vector<cfrs::AggregatorSpec>& specs) {
  if (cfg.folds < 2) fail("config", "--folds must be at least 2", 2);
  std::vector<cfrs::NamedDataset> datasets;
  for (const auto& path : cfg.datasets) datasets.push_back({dataset_name(path), load(path, cfg.decision_col)});
  try {
    return cfrs::run_benchmark(datasets, specs, cfg.folds, cfg.seed);
  } catch (const std::exception& e) {
    fail("evaluate", e.what(), 4);
  }
}

void cmd_crossval(const RunConfig& cfg) {
  if (cfg.datasets.size() != 1) fail("config", "crossval takes exactly one --dataset", 2);
  const auto specs = specs_of(cfg, {"owa"});
  const auto report = benchmark(cfg, specs);
  if (!report.failures.empty()) fail("evaluate", report.failures.begin()->second, 4);

  auto j = config_json(cfg, "crossval");
  j["dataset"] = report.datasets[0];
  ordered_json results = ordered_json::array();
  for (std::size_t s = 0; s < specs.size(); ++s) {
    ordered_json r;
    r["aggregator"] = specs[s].name();
    r["fold_balanced_accuracy"] = report.fold_accuracy[0][s];
    r["mean_balanced_accuracy"] = report.accuracy[0][s];
    results.push_back(r);
  }
  j["results"] = results;
  if (!report.usage.empty()) {
    ordered_json usage;
    for (std::size_t k = 0; k < cfrs::concrete_aggregators().size(); ++k) {
      usage[cfrs::to_string(cfrs::concrete_aggregators()[k])] = report.usage[0][k];
    }
    j["comb_usage"] = usage;
  }
  OutputDir out(cfg.out_dir);
  out.write_json("crossval.json", j);
}

void cmd_benchmark(const RunConfig& cfg) {
  if (cfg.datasets.empty()) fail("config", "benchmark needs at least one --dataset", 2);
  const auto specs =
      specs_of(cfg, {"min", "mino", "fr", "avg", "avgo", "ts", "owa", "owao", "wowa", "comb"});
  const auto report = benchmark(cfg, specs);
  OutputDir out(cfg.out_dir);
  out.write("results.csv", [&](std::ostream& os) { cfrs::write_results_csv(report, os); });
  if (!report.usage.empty()) out.write("usage.csv", [&](std::ostream& os) { cfrs::write_usage_csv(report, os); });
  out.write("pvalues.csv", [&](std::ostream& os) { cfrs::write_pvalues_csv(report, os); });
  out.write("ranksums.csv", [&](std::ostream& os) { cfrs::write_ranksums_csv(report, os); });
  auto summary = config_json(cfg, "benchmark");
  summary["failures"] = report.failures;
  out.write_json("summary.json", summary);
  for (const auto& [name, message] : report.failures) std::cerr << "warning: " << name << ": " << message << '\n';
}

void add_common(CLI::App* cmd, RunConfig& cfg, bool many_datasets) {
  auto* ds = cmd->add_option("--dataset", cfg.datasets, many_datasets ? "CSV dataset (repeatable)" : "CSV dataset")
                 ->required()
                 ->check(CLI::ExistingFile);
  if (!many_datasets) ds->expected(1);
  cmd->add_option("--decision-col", cfg.decision_col, "Decision column name (default: last column)");
  cmd->add_option("--contamination", cfg.contamination, "Fraction c of training instances labelled as outliers")
      ->capture_default_str();
  cmd->add_option("--lof-k", cfg.lof_k, "LOF neighbours, clamped to class size - 1")->capture_default_str();
  cmd->add_option("--out-dir", cfg.out_dir, "Directory for output files")->capture_default_str();
}

void add_model(CLI::App* cmd, RunConfig& cfg, const std::string& aggregator_help) {
  cmd->add_option("--aggregator", cfg.aggregators, aggregator_help)
      ->check(CLI::IsMember({"min", "mino", "fr", "avg", "avgo", "ts", "owa", "owao", "wowa", "comb"},
                            CLI::ignore_case));
  cmd->add_option("--quantifier", cfg.quantifier, "Quantifier for OWA, OWAo, WOWA and TS: additive or quadratic")
      ->check(CLI::IsMember({"additive", "quadratic"}))
      ->capture_default_str();
  cmd->add_option("--alpha", cfg.alpha, "alpha of the quadratic quantifier")->capture_default_str();
  cmd->add_option("--beta", cfg.beta, "beta of the quadratic quantifier")->capture_default_str();
  cmd->add_option("--t", cfg.t, "Weight t of the two-symmetric (TS) measure")->capture_default_str();
  cmd->add_option("--tnorm", cfg.tnorm, "t-norm of the fuzzy removal (FR) measure: minimum, product, lukasiewicz")
      ->capture_default_str();
  cmd->add_option("--implicator", cfg.implicator,
                  "Implicator of the lower approximation: kleene_dienes, reichenbach, lukasiewicz "
                  "(all three give the same crisp-class memberships)")
      ->capture_default_str();
  cmd->add_option("--seed", cfg.seed, "Seed for fold splits and COMB tie-breaking")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Choquet-based fuzzy rough set classification"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* lof = app.add_subcommand("lof-scores", "Per-class LOF scores, normalised scores and outlier labels");
  add_common(lof, cfg, false);

  auto* classify = app.add_subcommand("classify", "Fit on --dataset and predict the rows of --test");
  add_common(classify, cfg, false);
  add_model(classify, cfg, "Aggregation strategy (default: owa)");
  classify->add_option("--test", cfg.test, "CSV with the instances to classify")->required()->check(CLI::ExistingFile);

  auto* crossval = app.add_subcommand("crossval", "Stratified k-fold balanced accuracy on one dataset");
  add_common(crossval, cfg, false);
  add_model(crossval, cfg, "Aggregation strategy, repeatable (default: owa)");
  crossval->add_option("--folds", cfg.folds, "Number of folds")->capture_default_str();

  auto* bench = app.add_subcommand("benchmark", "Cross-validated comparison of aggregators over several datasets");
  add_common(bench, cfg, true);
  add_model(bench, cfg, "Aggregation strategy, repeatable (default: all ten)");
  bench->add_option("--folds", cfg.folds, "Number of folds")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*lof) cmd_lof_scores(cfg);
    if (*classify) cmd_classify(cfg);
    if (*crossval) cmd_crossval(cfg);
    if (*bench) cmd_benchmark(cfg);
  } catch (const StageError& e) {
    std::cerr << "error [" << e.stage << "]: " << e.message << '\n';
    return e.code;
  } catch (const std::exception& e) {
    std::cerr << "error [internal]: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
