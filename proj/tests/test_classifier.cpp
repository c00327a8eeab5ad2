#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>

#include "cfrs/approximation.hpp"
#include "cfrs/choquet.hpp"
#include "cfrs/classifier.hpp"
#include "support/oracles.hpp"

using namespace cfrs;

namespace {

double agg(AggregatorKind kind, const std::vector<double>& v, const std::vector<double>& o,
           const std::vector<char>& labels, AggregatorSpec spec = {}) {
  spec.kind = kind;
  return aggregate({v, o, labels}, spec);
}

AggregatorSpec spec_of(AggregatorKind kind) { return AggregatorSpec{}.with_kind(kind); }

/// Gaussian blobs, one per class, centred at 0 and `gap` on every axis.
DecisionSystem blobs(std::mt19937_64& rng, std::size_t per_class, std::size_t dims, double gap, double noise = 1.0) {
  std::normal_distribution<double> g(0.0, noise);
  std::vector<std::string> attrs;
  for (std::size_t a = 0; a < dims; ++a) attrs.push_back("a" + std::to_string(a));
  std::vector<double> values;
  std::vector<std::string> labels;
  for (std::size_t c = 0; c < 2; ++c) {
    for (std::size_t i = 0; i < per_class; ++i) {
      for (std::size_t a = 0; a < dims; ++a) values.push_back(gap * static_cast<double>(c) + g(rng));
      labels.push_back(c ? "pos" : "neg");
    }
  }
  return DecisionSystem(attrs, "class", values, labels);
}

std::vector<AggregatorSpec> all_concrete(const AggregatorSpec& base = {}) {
  std::vector<AggregatorSpec> out;
  for (AggregatorKind k : concrete_aggregators()) out.push_back(base.with_kind(k));
  return out;
}

/// Leave-one-out balanced accuracy by refitting every candidate from scratch.
double loocv_by_refit(const DecisionSystem& ds, const AggregatorSpec& spec) {
  std::vector<std::size_t> hits(ds.classes().size(), 0), totals(ds.classes().size(), 0);
  for (std::size_t out = 0; out < ds.size(); ++out) {
    std::vector<std::size_t> rows;
    for (std::size_t i = 0; i < ds.size(); ++i) {
      if (i != out) rows.push_back(i);
    }
    const auto model = fit(ds.subset(rows), spec, 0);
    ++totals[ds.class_of(out)];
    if (predict(model, ds.row(out)) == ds.label(out)) ++hits[ds.class_of(out)];
  }
  double sum = 0.0;
  for (std::size_t c = 0; c < hits.size(); ++c) sum += static_cast<double>(hits[c]) / static_cast<double>(totals[c]);
  return sum / static_cast<double>(hits.size());
}

}  // namespace

TEST_CASE("aggregator names") {
  CHECK(parse_aggregator("owao") == AggregatorKind::OWAo);
  CHECK(parse_aggregator("COMB") == AggregatorKind::COMB);
  CHECK(to_string(AggregatorKind::WOWA) == "WOWA");
  CHECK(concrete_aggregators().size() == 9);
  CHECK_THROWS_AS(parse_aggregator("median"), DomainError);
}

TEST_CASE("aggregator examples") {
  const std::vector<double> v = {0.4, 0.7, 0.2};
  const std::vector<double> zero(3, 0.0);
  const std::vector<char> none(3, 0);
  CHECK(agg(AggregatorKind::Min, v, zero, none) == 0.2);
  CHECK(agg(AggregatorKind::Avg, v, zero, none) == doctest::Approx(1.3 / 3).epsilon(1e-12));
  CHECK(agg(AggregatorKind::OWA, {0.2, 0.4, 0.6, 0.8}, std::vector<double>(4, 0.0), std::vector<char>(4, 0)) ==
        doctest::Approx(0.40).epsilon(1e-12));

  // Crisp outlier degrees: FR is the minimum over the trusted entries.
  const std::vector<double> w = {0.9, 0.1, 0.5, 0.3, 0.05};
  const std::vector<double> crisp = {0, 1, 0, 0, 1};
  CHECK(agg(AggregatorKind::FR, w, crisp, std::vector<char>(5, 0)) == doctest::Approx(0.3).epsilon(1e-12));
  const std::vector<char> labelled = {0, 1, 0, 0, 1};
  CHECK(agg(AggregatorKind::Mino, w, crisp, labelled) == 0.3);
  CHECK(agg(AggregatorKind::Avgo, w, crisp, labelled) == doctest::Approx(1.7 / 3).epsilon(1e-12));

  // Everything labelled: the restricted strategies fall back.
  const std::vector<char> all(3, 1);
  CHECK(agg(AggregatorKind::Mino, v, zero, all) == 0.2);
  CHECK(agg(AggregatorKind::OWAo, v, zero, all) == doctest::Approx(agg(AggregatorKind::OWA, v, zero, none)));
  // WOWA with every degree 1 has no weight left and falls back to OWA.
  const std::vector<double> ones(3, 1.0);
  CHECK(agg(AggregatorKind::WOWA, v, ones, none) == doctest::Approx(agg(AggregatorKind::OWA, v, zero, none)));

  CHECK_THROWS_AS(agg(AggregatorKind::Min, {}, {}, {}), DomainError);
  CHECK_THROWS_AS(agg(AggregatorKind::COMB, v, zero, none), DomainError);
  CHECK_THROWS_AS(agg(AggregatorKind::FR, v, {0.1}, none), DomainError);
}

TEST_CASE("aggregator reductions on random vectors") {
  std::mt19937_64 rng(51);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t n = 1 + trial % 25;
    const auto v = oracle::random_degrees(rng, n);
    const auto o = oracle::random_degrees(rng, n);
    const std::vector<double> zero(n, 0.0);
    const std::vector<char> none(n, 0);
    AggregatorSpec spec;
    if (trial % 2) spec.quantifier = {QuantifierSpec::Family::quadratic, 0.1, 0.6};
    const double owa = agg(AggregatorKind::OWA, v, o, none, spec);
    CHECK(agg(AggregatorKind::FR, v, zero, none, spec) == doctest::Approx(*std::min_element(v.begin(), v.end())));
    CHECK(agg(AggregatorKind::WOWA, v, zero, none, spec) == doctest::Approx(owa).epsilon(1e-12));
    spec.t = 1.0;
    CHECK(agg(AggregatorKind::TS, v, o, none, spec) == doctest::Approx(owa).epsilon(1e-12));
    CHECK(agg(AggregatorKind::Mino, v, o, none, spec) == agg(AggregatorKind::Min, v, o, none, spec));
    CHECK(agg(AggregatorKind::Avgo, v, o, none, spec) == agg(AggregatorKind::Avg, v, o, none, spec));
    CHECK(agg(AggregatorKind::OWAo, v, o, none, spec) == owa);
  }
}

TEST_CASE("toy predictions") {
  // x1 in class A, x2 in class B, far apart on the only attribute.
  const DecisionSystem toy({"a"}, "d", {0.0, 10.0}, {"A", "B"});
  const AggregatorSpec min_spec = spec_of(AggregatorKind::Min);
  const auto model = fit(toy, min_spec, 1);
  const double at_x1[] = {0.0};
  const auto m = class_memberships(model.train, model.state, at_x1, min_spec);
  CHECK(m[0] == 1.0);
  CHECK(m[1] == 0.0);
  CHECK(predict(model, at_x1) == "A");

  // Equidistant: equal memberships, the smaller label wins.
  const double middle[] = {5.0};
  const auto tied = class_memberships(model.train, model.state, middle, min_spec);
  CHECK(tied[0] == tied[1]);
  CHECK(predict(model, middle) == "A");

  CHECK_THROWS_AS(fit(DecisionSystem({"a"}, "d", {0.0, 1.0}, {"A", "A"}), min_spec, 1), DomainError);
}

TEST_CASE("cluster centroids are classified by every aggregator") {
  // Symmetric two-cluster set: a square around (0,0) and the same around (6,6).
  const DecisionSystem ds({"x", "y"}, "d",
                          {-1, -1, -1, 1, 1, -1, 1, 1, 0, 0, 5, 5, 5, 7, 7, 5, 7, 7, 6, 6},
                          {"a", "a", "a", "a", "a", "b", "b", "b", "b", "b"});
  const double c1[] = {0.0, 0.0}, c2[] = {6.0, 6.0};
  auto specs = all_concrete();
  specs.push_back(spec_of(AggregatorKind::COMB));
  for (const auto& spec : specs) {
    CAPTURE(spec.name());
    const auto model = fit(ds, spec, 3);
    CHECK(predict(model, c1) == "a");
    CHECK(predict(model, c2) == "b");
  }
}

TEST_CASE("leave-one-out accuracy matches refitting") {
  std::mt19937_64 rng(53);
  const auto ds = blobs(rng, 8, 2, 1.5);
  const auto specs = all_concrete();
  const auto fast = loocv_balanced_accuracy(ds, specs);
  for (std::size_t s = 0; s < specs.size(); ++s) {
    CAPTURE(specs[s].name());
    CHECK(fast[s] == doctest::Approx(loocv_by_refit(ds, specs[s])).epsilon(1e-12));
  }
  CHECK_THROWS_AS(loocv_balanced_accuracy(DecisionSystem({"a"}, "d", {0, 1, 2}, {"p", "p", "q"}), specs),
                  DomainError);
}

TEST_CASE("COMB selection") {
  std::mt19937_64 rng(54);
  const AggregatorSpec base;
  const auto specs = all_concrete(base);

  // Single candidate.
  const auto ds = blobs(rng, 6, 2, 1.0);
  CHECK(comb_select(ds, {base.with_kind(AggregatorKind::Avg)}, 9).kind == AggregatorKind::Avg);

  // Look for a noisy set with a unique best strategy; it must win for every seed.
  bool found = false;
  for (int attempt = 0; attempt < 50 && !found; ++attempt) {
    const auto noisy = blobs(rng, 10, 2, 1.2);
    const auto acc = loocv_balanced_accuracy(noisy, specs);
    const double best = *std::max_element(acc.begin(), acc.end());
    if (std::count(acc.begin(), acc.end(), best) != 1) continue;
    found = true;
    const auto winner = specs[static_cast<std::size_t>(std::max_element(acc.begin(), acc.end()) - acc.begin())].kind;
    for (std::uint64_t seed = 0; seed < 20; ++seed) CHECK(comb_select(noisy, specs, seed).kind == winner);
    CHECK(fit(noisy, base.with_kind(AggregatorKind::COMB), 5).resolved.kind == winner);
  }
  CHECK(found);

  CHECK_THROWS_AS(comb_select(ds, {}, 1), DomainError);
  CHECK_THROWS_AS(comb_select(ds, {base.with_kind(AggregatorKind::COMB), base}, 1), DomainError);
}

TEST_CASE("COMB ties are broken uniformly") {
  // Far-apart clusters: every strategy is perfect under leave-one-out.
  std::mt19937_64 rng(55);
  const auto ds = blobs(rng, 4, 2, 50.0, 0.5);
  const auto specs = all_concrete();
  const auto acc = loocv_balanced_accuracy(ds, specs);
  for (double a : acc) REQUIRE(a == 1.0);

  std::map<AggregatorKind, int> counts;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) ++counts[comb_select(ds, specs, seed).kind];
  const double expected = 1000.0 / 9.0;
  double chi2 = 0.0;
  for (AggregatorKind k : concrete_aggregators()) chi2 += (counts[k] - expected) * (counts[k] - expected) / expected;
  // 99th percentile of chi-square with 8 degrees of freedom.
  CHECK(chi2 < 20.090);

  CHECK(comb_select(ds, specs, 77).kind == comb_select(ds, specs, 77).kind);
}

TEST_CASE("uniform index is portable and in range") {
  std::mt19937_64 a(5), b(5);
  for (int i = 0; i < 1000; ++i) {
    const auto x = uniform_index(a, 9);
    CHECK(x < 9);
    CHECK(x == uniform_index(b, 9));
  }
  std::mt19937_64 rng(1);
  CHECK(uniform_index(rng, 1) == 0);
  CHECK_THROWS_AS(uniform_index(rng, 0), DomainError);
}

TEST_CASE("fit and predict are deterministic and row-order invariant") {
  std::mt19937_64 rng(56);
  for (int trial = 0; trial < 5; ++trial) {
    const auto ds = blobs(rng, 15, 3, 1.0);
    const auto tests = blobs(rng, 5, 3, 1.0);
    std::vector<std::size_t> perm(ds.size());
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    const auto shuffled = ds.subset(perm);
    auto specs = all_concrete();
    specs.push_back(spec_of(AggregatorKind::COMB));
    for (const auto& spec : specs) {
      CAPTURE(spec.name());
      const auto a = fit(ds, spec, 11);
      const auto b = fit(ds, spec, 11);
      CHECK(a.resolved.kind == b.resolved.kind);
      const auto c = fit(shuffled, spec.kind == AggregatorKind::COMB ? a.resolved : spec, 11);
      for (std::size_t i = 0; i < tests.size(); ++i) {
        CHECK(predict(a, tests.row(i)) == predict(b, tests.row(i)));
        CHECK(predict(a, tests.row(i)) == predict(c, tests.row(i)));
      }
    }
  }
}

TEST_CASE("class membership is the restricted lower approximation") {
  std::mt19937_64 rng(57);
  for (int trial = 0; trial < 30; ++trial) {
    const auto ds = blobs(rng, 5, 2, 1.0);
    const auto r = build_similarity(ds);
    const auto state = prepare_training_state(ds, 3, 0.1);
    const std::size_t n = ds.size();
    for (std::size_t y = 0; y < n; ++y) {
      for (std::size_t c = 0; c < 2; ++c) {
        std::vector<double> crisp(n);
        std::vector<std::size_t> outside;
        for (std::size_t x = 0; x < n; ++x) {
          crisp[x] = ds.class_of(x) == c ? 1.0 : 0.0;
          if (ds.class_of(x) != c) outside.push_back(x);
        }
        const FuzzySet a(Universe::indexed(n), crisp);
        const double min_membership = class_memberships(ds, state, ds.row(y), spec_of(AggregatorKind::Min))[c];
        // Min is the full lower approximation over X with the universal measure.
        for (auto kind : {ImplicatorKind::kleene_dienes, ImplicatorKind::reichenbach, ImplicatorKind::lukasiewicz}) {
          const auto all = symmetric_from_quantifier(Quantifier::universal(), n);
          CHECK(min_membership == doctest::Approx(lower_approximation(r, a, all, Implicator(kind), y)).epsilon(1e-12));
        }
        // OWA is the lower approximation of the empty set on the universe outside the class.
        const std::size_t m = outside.size();
        std::vector<double> sub(m * m);
        for (std::size_t i = 0; i < m; ++i) {
          for (std::size_t j = 0; j < m; ++j) sub[i * m + j] = r(outside[i], outside[j]);
        }
        std::vector<double> f(m);
        for (std::size_t i = 0; i < m; ++i) f[i] = implicator_eval(ImplicatorKind::lukasiewicz, r(outside[i], y), 0.0);
        const double owa_membership = class_memberships(ds, state, ds.row(y), spec_of(AggregatorKind::OWA))[c];
        CHECK(owa_membership ==
              doctest::Approx(choquet_integral(f, symmetric_from_quantifier(Quantifier::additive(m), m))).epsilon(1e-12));
      }
    }
  }
}
