#include "cfrs/fuzzy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace cfrs {

namespace {

constexpr int kAxiomGrid = 21;
constexpr double kAxiomTol = 1e-9;

double grid_point(int i) { return static_cast<double>(i) / (kAxiomGrid - 1); }

void validate_tnorm(const std::string& name, const TNorm::Fn& fn) {
  auto fail = [&](const std::string& axiom) {
    throw DomainError("t-norm '" + name + "' violates " + axiom);
  };
  for (int i = 0; i < kAxiomGrid; ++i) {
    const double x = grid_point(i);
    if (std::abs(fn(1.0, x) - x) > kAxiomTol) fail("neutral element");
    for (int j = 0; j < kAxiomGrid; ++j) {
      const double y = grid_point(j);
      const double v = fn(x, y);
      if (!(v >= -kAxiomTol && v <= 1.0 + kAxiomTol)) fail("range [0,1]");
      if (std::abs(v - fn(y, x)) > kAxiomTol) fail("commutativity");
      if (j + 1 < kAxiomGrid && fn(x, grid_point(j + 1)) < v - kAxiomTol) fail("monotonicity");
      for (int k = 0; k < kAxiomGrid; k += 5) {
        const double z = grid_point(k);
        if (std::abs(fn(fn(x, y), z) - fn(x, fn(y, z))) > kAxiomTol) fail("associativity");
      }
    }
  }
}

void validate_implicator(const std::string& name, const Implicator::Fn& fn) {
  auto fail = [&](const std::string& axiom) {
    throw DomainError("implicator '" + name + "' violates " + axiom);
  };
  if (std::abs(fn(0, 0) - 1) > kAxiomTol || std::abs(fn(0, 1) - 1) > kAxiomTol ||
      std::abs(fn(1, 1) - 1) > kAxiomTol || std::abs(fn(1, 0)) > kAxiomTol) {
    fail("boundary conditions");
  }
  for (int i = 0; i < kAxiomGrid; ++i) {
    for (int j = 0; j < kAxiomGrid; ++j) {
      const double v = fn(grid_point(i), grid_point(j));
      if (!(v >= -kAxiomTol && v <= 1.0 + kAxiomTol)) fail("range [0,1]");
      if (i + 1 < kAxiomGrid && fn(grid_point(i + 1), grid_point(j)) > v + kAxiomTol) {
        fail("antitonicity in the first argument");
      }
      if (j + 1 < kAxiomGrid && fn(grid_point(i), grid_point(j + 1)) < v - kAxiomTol) {
        fail("monotonicity in the second argument");
      }
    }
  }
}

}  // namespace

void check_degree(double x, const char* what) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw DomainError(std::string(what) + " must be a degree in [0,1], got " + std::to_string(x));
  }
}

double tnorm_eval(TNormKind kind, double x, double y) {
  switch (kind) {
    case TNormKind::minimum:
      return std::min(x, y);
    case TNormKind::product:
      return x * y;
    case TNormKind::lukasiewicz:
      return std::max(x + y - 1.0, 0.0);
  }
  throw DomainError("unknown t-norm");
}

double tnorm_eval(TNormKind kind, std::span<const double> xs) {
  if (xs.empty()) throw DomainError("t-norm of an empty list");
  for (double x : xs) check_degree(x, "t-norm argument");
  double acc = xs.front();
  for (std::size_t i = 1; i < xs.size(); ++i) acc = tnorm_eval(kind, acc, xs[i]);
  return acc;
}

double implicator_eval(ImplicatorKind kind, double x, double y) {
  check_degree(x, "implicator antecedent");
  check_degree(y, "implicator consequent");
  switch (kind) {
    case ImplicatorKind::kleene_dienes:
      return std::max(1.0 - x, y);
    case ImplicatorKind::reichenbach:
      return 1.0 - x + x * y;
    case ImplicatorKind::lukasiewicz:
      return std::min(1.0 - x + y, 1.0);
  }
  throw DomainError("unknown implicator");
}

double negator_eval(NegatorKind kind, double x) {
  check_degree(x, "negator argument");
  switch (kind) {
    case NegatorKind::standard:
      return 1.0 - x;
  }
  throw DomainError("unknown negator");
}

double induced_conjunctor(ImplicatorKind implicator, NegatorKind negator, double x, double y) {
  return negator_eval(negator, implicator_eval(implicator, x, negator_eval(negator, y)));
}

std::string to_string(TNormKind kind) {
  switch (kind) {
    case TNormKind::minimum:
      return "minimum";
    case TNormKind::product:
      return "product";
    case TNormKind::lukasiewicz:
      return "lukasiewicz";
  }
  return "?";
}

std::string to_string(ImplicatorKind kind) {
  switch (kind) {
    case ImplicatorKind::kleene_dienes:
      return "kleene_dienes";
    case ImplicatorKind::reichenbach:
      return "reichenbach";
    case ImplicatorKind::lukasiewicz:
      return "lukasiewicz";
  }
  return "?";
}

TNormKind parse_tnorm(const std::string& name) {
  if (name == "minimum" || name == "min") return TNormKind::minimum;
  if (name == "product") return TNormKind::product;
  if (name == "lukasiewicz") return TNormKind::lukasiewicz;
  throw DomainError("unknown t-norm '" + name + "'");
}

ImplicatorKind parse_implicator(const std::string& name) {
  if (name == "kleene_dienes" || name == "kd") return ImplicatorKind::kleene_dienes;
  if (name == "reichenbach") return ImplicatorKind::reichenbach;
  if (name == "lukasiewicz") return ImplicatorKind::lukasiewicz;
  throw DomainError("unknown implicator '" + name + "'");
}

// ---------------------------------------------------------------------------

TNorm::TNorm(TNormKind kind)
    : builtin_(true), kind_(kind), name_(to_string(kind)),
      fn_([kind](double x, double y) { return tnorm_eval(kind, x, y); }) {}

TNorm::TNorm(std::string name, Fn fn) : builtin_(false), name_(std::move(name)), fn_(std::move(fn)) {}

TNorm TNorm::custom(std::string name, Fn fn) {
  if (!fn) throw DomainError("custom t-norm '" + name + "' has no function");
  validate_tnorm(name, fn);
  return TNorm(std::move(name), std::move(fn));
}

double TNorm::operator()(double x, double y) const {
  if (builtin_) return tnorm_eval(kind_, x, y);
  return fn_(x, y);
}

double TNorm::fold(std::span<const double> xs) const {
  if (xs.empty()) throw DomainError("t-norm of an empty list");
  double acc = xs.front();
  for (std::size_t i = 1; i < xs.size(); ++i) acc = (*this)(acc, xs[i]);
  return acc;
}

Implicator::Implicator(ImplicatorKind kind)
    : builtin_(true), kind_(kind), name_(to_string(kind)),
      fn_([kind](double x, double y) { return implicator_eval(kind, x, y); }) {}

Implicator::Implicator(std::string name, Fn fn)
    : builtin_(false), name_(std::move(name)), fn_(std::move(fn)) {}

Implicator Implicator::custom(std::string name, Fn fn) {
  if (!fn) throw DomainError("custom implicator '" + name + "' has no function");
  validate_implicator(name, fn);
  return Implicator(std::move(name), std::move(fn));
}

double Implicator::operator()(double x, double y) const {
  if (builtin_) return implicator_eval(kind_, x, y);
  return fn_(x, y);
}

Conjunctor Conjunctor::from_tnorm(TNorm tnorm) {
  return Conjunctor([t = std::move(tnorm)](double x, double y) { return t(x, y); });
}

Conjunctor Conjunctor::induced(Implicator implicator, NegatorKind negator) {
  return Conjunctor([imp = std::move(implicator), negator](double x, double y) {
    return negator_eval(negator, imp(x, negator_eval(negator, y)));
  });
}

// ---------------------------------------------------------------------------

Universe::Universe(std::vector<std::string> ids) : ids_(std::move(ids)) {
  if (ids_.empty()) throw DomainError("universe must contain at least one element");
  index_.reserve(ids_.size());
  for (std::size_t i = 0; i < ids_.size(); ++i) {
    if (!index_.emplace(ids_[i], i).second) {
      throw DomainError("duplicate universe identifier '" + ids_[i] + "'");
    }
  }
}

std::shared_ptr<const Universe> Universe::indexed(std::size_t n) {
  std::vector<std::string> ids(n);
  for (std::size_t i = 0; i < n; ++i) ids[i] = "x" + std::to_string(i + 1);
  return std::make_shared<const Universe>(std::move(ids));
}

std::size_t Universe::index_of(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw DomainError("unknown universe identifier '" + id + "'");
  return it->second;
}

FuzzySet::FuzzySet(std::shared_ptr<const Universe> universe, std::vector<double> memberships)
    : universe_(std::move(universe)), memberships_(std::move(memberships)) {
  if (!universe_) throw DomainError("fuzzy set needs a universe");
  if (memberships_.size() != universe_->size()) {
    throw DomainError("fuzzy set length does not match universe size");
  }
  for (double m : memberships_) check_degree(m, "membership");
}

double FuzzySet::cardinality() const {
  return std::accumulate(memberships_.begin(), memberships_.end(), 0.0);
}

bool FuzzySet::same_universe(const FuzzySet& other) const {
  return universe_ == other.universe_ || (universe_->size() == other.universe_->size() && [&] {
           for (std::size_t i = 0; i < universe_->size(); ++i) {
             if (universe_->id(i) != other.universe_->id(i)) return false;
           }
           return true;
         }());
}

FuzzySet complement(const FuzzySet& a, NegatorKind negator) {
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = negator_eval(negator, a[i]);
  return FuzzySet(a.universe(), std::move(out));
}

FuzzySet intersect_min(const FuzzySet& a, const FuzzySet& b) {
  if (!a.same_universe(b)) throw DomainError("intersection of fuzzy sets on different universes");
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = std::min(a[i], b[i]);
  return FuzzySet(a.universe(), std::move(out));
}

}  // namespace cfrs
