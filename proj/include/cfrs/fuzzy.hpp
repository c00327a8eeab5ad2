#pragma once

#include <functional>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace cfrs {

/// Raised when an argument lies outside the mathematical domain of an operation.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Throws DomainError unless x is a degree in [0,1].
void check_degree(double x, const char* what);

enum class TNormKind { minimum, product, lukasiewicz };
enum class ImplicatorKind { kleene_dienes, reichenbach, lukasiewicz };
enum class NegatorKind { standard };

double tnorm_eval(TNormKind kind, double x, double y);
/// n-ary fold of the binary t-norm. Throws on an empty list.
double tnorm_eval(TNormKind kind, std::span<const double> xs);
double implicator_eval(ImplicatorKind kind, double x, double y);
double negator_eval(NegatorKind kind, double x);
/// N(I(x, N(y)))
double induced_conjunctor(ImplicatorKind implicator, NegatorKind negator, double x, double y);

std::string to_string(TNormKind kind);
std::string to_string(ImplicatorKind kind);
TNormKind parse_tnorm(const std::string& name);
ImplicatorKind parse_implicator(const std::string& name);

/// A t-norm, either one of the built-in kinds or a user-supplied binary
/// function. Custom functions are checked against the t-norm axioms on a
/// grid when constructed and rejected with DomainError if any fails.
class TNorm {
 public:
  using Fn = std::function<double(double, double)>;

  TNorm(TNormKind kind);  // NOLINT(google-explicit-constructor)
  static TNorm custom(std::string name, Fn fn);

  double operator()(double x, double y) const;
  double fold(std::span<const double> xs) const;

  const std::string& name() const { return name_; }
  bool is_minimum() const { return builtin_ && kind_ == TNormKind::minimum; }

 private:
  TNorm(std::string name, Fn fn);

  bool builtin_ = true;
  TNormKind kind_ = TNormKind::minimum;
  std::string name_;
  Fn fn_;
};

/// An implicator, built-in or user-supplied (validated on a grid: hybrid
/// monotonicity and the corner values I(0,0)=I(0,1)=I(1,1)=1, I(1,0)=0).
class Implicator {
 public:
  using Fn = std::function<double(double, double)>;

  Implicator(ImplicatorKind kind);  // NOLINT(google-explicit-constructor)
  static Implicator custom(std::string name, Fn fn);

  double operator()(double x, double y) const;
  const std::string& name() const { return name_; }

 private:
  Implicator(std::string name, Fn fn);

  bool builtin_ = true;
  ImplicatorKind kind_ = ImplicatorKind::kleene_dienes;
  std::string name_;
  Fn fn_;
};

/// A conjunctor for upper approximations: a t-norm, or the conjunctor
/// induced by an implicator and a negator.
class Conjunctor {
 public:
  static Conjunctor from_tnorm(TNorm tnorm);
  static Conjunctor induced(Implicator implicator, NegatorKind negator = NegatorKind::standard);

  double operator()(double x, double y) const { return fn_(x, y); }

 private:
  explicit Conjunctor(std::function<double(double, double)> fn) : fn_(std::move(fn)) {}
  std::function<double(double, double)> fn_;
};

struct ConnectiveSuite {
  TNorm tnorm = TNormKind::minimum;
  Implicator implicator = ImplicatorKind::kleene_dienes;
  NegatorKind negator = NegatorKind::standard;
};

/// Finite, ordered set of unique instance identifiers.
class Universe {
 public:
  explicit Universe(std::vector<std::string> ids);
  /// Universe with identifiers "x1".."xn".
  static std::shared_ptr<const Universe> indexed(std::size_t n);

  std::size_t size() const { return ids_.size(); }
  const std::string& id(std::size_t i) const { return ids_.at(i); }
  std::size_t index_of(const std::string& id) const;

 private:
  std::vector<std::string> ids_;
  std::unordered_map<std::string, std::size_t> index_;
};

class FuzzySet {
 public:
  FuzzySet(std::shared_ptr<const Universe> universe, std::vector<double> memberships);

  const std::shared_ptr<const Universe>& universe() const { return universe_; }
  std::span<const double> memberships() const { return memberships_; }
  std::size_t size() const { return memberships_.size(); }
  double operator[](std::size_t i) const { return memberships_[i]; }

  /// Sigma-count: sum of membership degrees.
  double cardinality() const;
  bool same_universe(const FuzzySet& other) const;

 private:
  std::shared_ptr<const Universe> universe_;
  std::vector<double> memberships_;
};

FuzzySet complement(const FuzzySet& a, NegatorKind negator = NegatorKind::standard);
FuzzySet intersect_min(const FuzzySet& a, const FuzzySet& b);

}  // namespace cfrs
