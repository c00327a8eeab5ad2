// Acceptance checks. Prints one PASS/FAIL line per criterion; exits nonzero
// when a criterion fails for any reason other than missing input data.

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cfrs/approximation.hpp"
#include "cfrs/choquet.hpp"
#include "cfrs/classifier.hpp"
#include "cfrs/csv.hpp"
#include "cfrs/evaluation.hpp"
#include "cfrs/outlier.hpp"
#include "support/oracles.hpp"

using namespace cfrs;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  bool blocked = false;  // failed only because inputs are missing
  std::string detail;
};

/// Collects failed checks; keeps the first few messages.
class Checker {
 public:
  void expect(bool ok, const std::string& what) {
    ++total_;
    if (ok) return;
    ++failed_;
    if (messages_.size() < 5) messages_.push_back(what);
  }
  void near(double got, double want, double tol, const std::string& what) {
    std::ostringstream os;
    os.precision(17);
    os << what << ": got " << got << ", want " << want;
    expect(std::abs(got - want) <= tol, os.str());
  }
  Outcome outcome(const std::string& summary) const {
    Outcome o;
    o.pass = failed_ == 0;
    std::ostringstream os;
    os << summary << " (" << total_ - failed_ << "/" << total_ << " checks)";
    for (const auto& m : messages_) os << "; " << m;
    o.detail = os.str();
    return o;
  }

 private:
  std::size_t total_ = 0;
  std::size_t failed_ = 0;
  std::vector<std::string> messages_;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

SubsetView subset(std::uint32_t mask, std::size_t n) { return SubsetView(oracle::members_of(mask, n)); }

FuzzySet fuzzy(std::vector<double> v) {
  auto u = Universe::indexed(v.size());
  return FuzzySet(u, std::move(v));
}

std::vector<double> random_relation(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> m(n * n, 1.0);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = x + 1; y < n; ++y) m[x * n + y] = m[y * n + x] = u(rng);
  }
  return m;
}

// ---------------------------------------------------------------------------

Outcome worked_examples() {
  const auto start = std::chrono::steady_clock::now();
  Checker c;
  const auto most = Quantifier::quadratic(0.3, 0.9);
  const FuzzySet basketball(Universe::indexed(4), {0.5, 0.5, 1.0, 1.0});
  c.near(yager_eval(most, basketball), 0.6111, 1e-3, "Yager basketball");
  c.expect(zadeh_eval(most, basketball) == 0.875, "Zadeh basketball == 0.875");
  const std::vector<double> party = {0, 0, 0, 0.3, 0.3};
  c.expect(fuzzy_removal(party, TNormKind::minimum)(SubsetView({0, 1, 2})) == 0.3, "fuzzy removal party == 0.3");
  // 0.3, 0.6 and 0.9 have no exact binary form, so "exactly" means to within
  // a few units in the last place of 0.5.
  const double q06 = most(0.6);
  const double ulps = std::abs(q06 - 0.5) / (0.5 - std::nextafter(0.5, 0.0));
  c.expect(ulps <= 4.0, "Q(0.3,0.9)(0.6) within 4 ulp of 0.5");
  const double share = 3.0 / 4.4;
  const double by_formula = 1.0 - 2.0 * (share - 0.9) * (share - 0.9) / (0.6 * 0.6);
  c.near(wowa_measure(most, party)(SubsetView({0, 1, 2})), by_formula, 1e-12, "WOWA party");
  const double elapsed = seconds_since(start);
  c.expect(elapsed < 1.0, "runtime under 1 s");
  std::ostringstream os;
  os << "worked examples; Q(0.3,0.9)(0.6) = " << format_double(q06) << " (" << ulps
     << " ulp from 0.5); WOWA party = " << format_double(by_formula) << " by the formula; "
     << elapsed << " s";
  return c.outcome(os.str());
}

Outcome theorem_suite() {
  const auto start = std::chrono::steady_clock::now();
  Checker c;
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const std::vector<Quantifier> quantifiers = {Quantifier::quadratic(0.3, 0.9), Quantifier::quadratic(0.0, 0.5),
                                               Quantifier::universal(), Quantifier::existential()};

  // Choquet = OWA for symmetric measures: exhaustive value patterns, n <= 6.
  for (std::size_t n = 1; n <= 6; ++n) {
    std::size_t patterns = 1;
    for (std::size_t i = 0; i < n; ++i) patterns *= 4;
    for (const auto& q : quantifiers) {
      const auto mu = symmetric_from_quantifier(q, n);
      const auto w = weights_from_quantifier(q, n);
      for (std::size_t code = 0; code < patterns; ++code) {
        std::vector<double> f(n);
        std::size_t rest = code;
        for (double& x : f) {
          x = static_cast<double>(rest % 4) / 3.0;
          rest /= 4;
        }
        c.expect(std::abs(choquet_integral(f, mu) - owa(f, w)) < 1e-12, "Choquet = OWA (exhaustive)");
      }
    }
  }
  for (int trial = 0; trial < 10000; ++trial) {
    const std::size_t n = 1 + trial % 50;
    const auto q = trial % 2 ? Quantifier::additive(n) : Quantifier::quadratic(0.1 * (trial % 5), 0.6 + 0.05 * (trial % 7));
    const auto f = oracle::random_degrees(rng, n);
    c.expect(std::abs(choquet_integral(f, symmetric_from_quantifier(q, n)) - owa(f, weights_from_quantifier(q, n))) <
                 1e-12,
             "Choquet = OWA (random)");
  }

  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 1 + trial % 7;
    // Weighted mean for additive measures.
    auto p = oracle::random_degrees(rng, n);
    double total = 0.0;
    for (double x : p) total += x;
    for (double& x : p) x /= total;
    const auto f = oracle::random_degrees(rng, n);
    double mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) mean += p[i] * f[i];
    c.near(choquet_integral(f, additive_from_weights(WeightVector(p))), mean, 1e-12, "weighted mean");

    // Translation and duality on a non-symmetric measure.
    const auto mu = wowa_measure(Quantifier::quadratic(0.2, 0.8), oracle::random_degrees(rng, n));
    std::vector<double> shifted(f), negated(f), flipped(f);
    for (double& x : shifted) x += 2.5;
    for (double& x : negated) x = -x;
    for (double& x : flipped) x = 1.0 - x;
    const auto dual = dual_measure(mu);
    c.near(choquet_integral(shifted, mu), choquet_integral(f, mu) + 2.5, 1e-12, "translation");
    c.near(choquet_integral(f, dual), -choquet_integral(negated, mu), 1e-12, "duality");
    c.near(choquet_integral(f, dual), 1.0 - choquet_integral(flipped, mu), 1e-12, "duality on [0,1]");
  }

  // Partial minimum and maximum.
  for (std::size_t n = 2; n <= 6; ++n) {
    for (std::uint32_t o = 0; o + 1 < (1u << n); ++o) {
      const auto f = oracle::random_degrees(rng, n);
      double lo = 1.0, hi = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        if ((o >> i) & 1u) continue;
        lo = std::min(lo, f[i]);
        hi = std::max(hi, f[i]);
      }
      c.near(choquet_integral(f, partial_universal(subset(o, n), n)), lo, 1e-12, "partial minimum");
      c.near(choquet_integral(f, partial_existential(subset(o, n), n)), hi, 1e-12, "partial maximum");
    }
  }

  // Dual of a symmetric measure is the OWA with reversed weights.
  for (std::size_t n = 1; n <= 8; ++n) {
    for (const auto& q : quantifiers) {
      const auto reversed = weights_from_quantifier(q, n).reversed();
      const auto dual = dual_measure(symmetric_from_quantifier(q, n));
      for (int trial = 0; trial < 20; ++trial) {
        const auto f = oracle::random_degrees(rng, n);
        c.near(choquet_integral(f, dual), owa(f, reversed), 1e-12, "dual OWA weight reversal");
      }
    }
  }

  // Approximation properties on random systems, n <= 8.
  const ImplicatorKind implicators[] = {ImplicatorKind::kleene_dienes, ImplicatorKind::reichenbach,
                                        ImplicatorKind::lukasiewicz};
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t n = 1 + trial % 8;
    const auto big = random_relation(rng, n);
    auto small = big;
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = x + 1; y < n; ++y) small[x * n + y] = small[y * n + x] = big[x * n + y] * u(rng);
    }
    const SimilarityRelation r1(n, small), r2(n, big);
    const auto a_values = oracle::random_degrees(rng, n);
    auto wider = a_values, co = a_values;
    for (double& v : wider) v = std::min(1.0, v + 0.3 * u(rng));
    for (double& v : co) v = 1.0 - v;
    const auto a1 = fuzzy(a_values), a2 = fuzzy(wider), co_a = fuzzy(co);
    const auto degrees = oracle::random_degrees(rng, n);
    const std::vector<Measure> measures = {symmetric_from_quantifier(Quantifier::additive(n), n),
                                           wowa_measure(Quantifier::quadratic(0.3, 0.9), degrees),
                                           fuzzy_removal(degrees, TNormKind::product),
                                           ordered_two_symmetric(Quantifier::additive(n), degrees, 0.3, 0.2)};
    for (const auto& mu : measures) {
      const auto dual = dual_measure(mu);
      for (auto kind : implicators) {
        const Implicator imp(kind);
        const auto conj = Conjunctor::induced(imp);
        for (std::size_t y = 0; y < n; ++y) {
          c.expect(lower_approximation(r1, a1, mu, imp, y) >= lower_approximation(r2, a1, mu, imp, y) - 1e-12,
                   "relation monotonicity (lower)");
          c.expect(upper_approximation(r1, a1, mu, conj, y) <= upper_approximation(r2, a1, mu, conj, y) + 1e-12,
                   "relation monotonicity (upper)");
          c.expect(lower_approximation(r1, a1, mu, imp, y) <= lower_approximation(r1, a2, mu, imp, y) + 1e-12,
                   "set monotonicity (lower)");
          c.expect(upper_approximation(r1, a1, mu, conj, y) <= upper_approximation(r1, a2, mu, conj, y) + 1e-12,
                   "set monotonicity (upper)");
          c.near(lower_approximation(r1, a1, mu, imp, y), 1.0 - upper_approximation(r1, co_a, dual, conj, y), 1e-12,
                 "approximation duality");
        }
      }
    }
  }

  // Inclusion counterexample: partition {B, coB}, A = X, Q_add.
  bool witness = false;
  for (std::size_t n = 2; n <= 5 && !witness; ++n) {
    const auto mu = symmetric_from_quantifier(Quantifier::additive(n), n);
    for (std::uint32_t b = 1; b + 1 < (1u << n) && !witness; ++b) {
      std::vector<double> m(n * n);
      for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) m[x * n + y] = ((b >> x) & 1u) == ((b >> y) & 1u) ? 1.0 : 0.0;
      }
      const SimilarityRelation r(n, m);
      const auto a = fuzzy(std::vector<double>(n, 1.0));
      const Implicator kd(ImplicatorKind::kleene_dienes);
      for (std::size_t y = 0; y < n; ++y) {
        if (lower_approximation(r, a, mu, kd, y) > upper_approximation(r, a, mu, Conjunctor::induced(kd), y) + 1e-9) {
          witness = true;
        }
      }
    }
  }
  c.expect(witness, "inclusion counterexample witness");

  const double elapsed = seconds_since(start);
  c.expect(elapsed < 60.0, "runtime under 60 s");
  std::ostringstream os;
  os << "theorem suite; " << elapsed << " s";
  return c.outcome(os.str());
}

Outcome lof_oracle() {
  const auto start = std::chrono::steady_clock::now();
  Checker c;
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g(0.0, 1.0);
  const std::size_t ks[] = {1, 3, 5};
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t k = ks[trial % 3];
    const std::size_t n = k + 1 + static_cast<std::size_t>(trial) % (30 - k);
    const std::size_t dims = 1 + trial % 4;
    std::vector<std::vector<double>> pts(n, std::vector<double>(dims));
    std::vector<double> flat;
    for (auto& p : pts) {
      for (double& x : p) {
        x = g(rng);
        flat.push_back(x);
      }
    }
    const auto got = lof_scores(flat, dims, k);
    const auto want = oracle::lof(pts, k, kLofDistanceFloor);
    for (std::size_t i = 0; i < n; ++i) {
      worst = std::max(worst, std::abs(got[i] - want[i]));
      c.near(got[i], want[i], 1e-9, "LOF");
    }
  }
  const double elapsed = seconds_since(start);
  c.expect(elapsed < 30.0, "runtime under 30 s");
  std::ostringstream os;
  os << "LOF vs brute force on 100 datasets, max |diff| = " << worst << "; " << elapsed << " s";
  return c.outcome(os.str());
}

Outcome wilcoxon_exactness() {
  Checker c;
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.1, 1.0);
  std::uniform_int_distribution<int> sign(0, 1);
  for (std::size_t m = 1; m <= 12; ++m) {
    for (int trial = 0; trial < 40; ++trial) {
      std::vector<double> a(m), b(m, 0.0);
      for (double& x : a) x = sign(rng) ? u(rng) : -u(rng);
      const auto r = wilcoxon_signed_rank(a, b);
      c.expect(r.p_value == oracle::signed_rank_p(m, static_cast<std::size_t>(r.w_plus)), "exact p == recurrence");
    }
  }
  const auto five = wilcoxon_signed_rank(std::vector<double>{1, 2, 3, 4, 5}, std::vector<double>(5, 0.0));
  c.expect(five.p_value == 0.0625, "m = 5 all positive gives 0.0625");
  return c.outcome("Wilcoxon exact p for m <= 12");
}

// ---------------------------------------------------------------------------

const std::vector<std::string> kColumns = {"Min", "Mino", "FR", "Avg", "Avgo", "TS", "OWA", "OWAo", "WOWA", "COMB"};

const std::map<std::string, std::vector<double>> kReference = {
    {"appendicitis", {0.739, 0.704, 0.773, 0.768, 0.768, 0.793, 0.768, 0.774, 0.774, 0.754}},
    {"haberman", {0.540, 0.581, 0.583, 0.625, 0.628, 0.602, 0.622, 0.634, 0.629, 0.634}},
    {"somerville", {0.566, 0.567, 0.573, 0.623, 0.640, 0.612, 0.624, 0.655, 0.613, 0.583}},
    {"wisconsin", {0.963, 0.958, 0.958, 0.894, 0.892, 0.922, 0.926, 0.926, 0.926, 0.967}},
};

std::vector<AggregatorSpec> table_specs() {
  std::vector<AggregatorSpec> specs;
  for (const auto& name : kColumns) specs.push_back(AggregatorSpec{}.with_kind(parse_aggregator(name)));
  return specs;
}

Outcome benchmark_reproduction() {
  const auto start = std::chrono::steady_clock::now();
  Checker c;
  std::vector<NamedDataset> datasets;
  std::vector<std::string> missing;
  for (const auto& [name, row] : kReference) {
    const fs::path path = fs::path(CFRS_DATA_DIR) / (name + ".csv");
    if (!fs::exists(path)) {
      missing.push_back(name);
      continue;
    }
    datasets.push_back({name, ingest_csv(path.string())});
  }
  const auto specs = table_specs();
  const std::uint64_t seeds[] = {1, 2, 3};
  std::vector<std::vector<double>> mean(datasets.size(), std::vector<double>(specs.size(), 0.0));
  for (std::uint64_t seed : seeds) {
    const auto report = run_benchmark(datasets, specs, 5, seed);
    for (const auto& [name, message] : report.failures) c.expect(false, name + " failed: " + message);
    for (std::size_t d = 0; d < datasets.size(); ++d) {
      for (std::size_t s = 0; s < specs.size(); ++s) mean[d][s] += report.accuracy[d][s] / 3.0;
    }
  }
  std::ostringstream os;
  os.precision(3);
  os << std::fixed;
  double worst = 0.0;
  for (std::size_t d = 0; d < datasets.size(); ++d) {
    const auto& target = kReference.at(datasets[d].name);
    os << datasets[d].name << " [";
    for (std::size_t s = 0; s < specs.size(); ++s) {
      const double diff = mean[d][s] - target[s];
      worst = std::max(worst, std::abs(diff));
      c.near(mean[d][s], target[s], 0.05, datasets[d].name + "/" + kColumns[s]);
      os << (s ? " " : "") << kColumns[s] << " " << mean[d][s];
    }
    os << "] ";
  }
  os << "max |diff| " << worst << "; " << seconds_since(start) << " s";
  Outcome o = c.outcome("3-seed 5-fold means vs reference accuracies: " + os.str());
  if (!missing.empty()) {
    std::string list;
    for (const auto& m : missing) list += (list.empty() ? "" : ", ") + m;
    o.detail += "; NOT EVALUATED (dataset unavailable): " + list;
    if (o.pass) o.blocked = true;
    o.pass = false;
  }
  return o;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Outcome determinism() {
  Checker c;
  const fs::path root = fs::temp_directory_path() / ("cfrs_acceptance_" + std::to_string(::getpid()));
  fs::remove_all(root);
  const std::string data = (fs::path(CFRS_DATA_DIR) / "haberman.csv").string();
  for (const char* run : {"a", "b"}) {
    const std::string cmd = std::string(CFRS_CLI_PATH) + " benchmark --dataset " + data + " --seed 7 --out-dir " +
                            (root / run).string() + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    c.expect(WIFEXITED(status) && WEXITSTATUS(status) == 0, std::string("benchmark run ") + run + " succeeded");
  }
  std::size_t compared = 0;
  for (const char* file : {"results.csv", "usage.csv", "pvalues.csv", "ranksums.csv", "summary.json"}) {
    const auto a = slurp(root / "a" / file);
    c.expect(!a.empty(), std::string(file) + " written");
    c.expect(a == slurp(root / "b" / file), std::string(file) + " byte-identical");
    ++compared;
  }
  fs::remove_all(root);
  return c.outcome("two CLI benchmark runs on haberman, " + std::to_string(compared) + " report files compared");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"1", worked_examples}, {"2", theorem_suite}, {"3", lof_oracle},
      {"4", wilcoxon_exactness}, {"5", benchmark_reproduction}, {"6", determinism},
  };
  int hard_failures = 0;
  for (const auto& [id, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << id << ": " << o.detail << std::endl;
    if (!o.pass && !o.blocked) ++hard_failures;
  }
  return hard_failures == 0 ? 0 : 1;
}
