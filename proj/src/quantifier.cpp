#include "cfrs/quantifier.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "cfrs/choquet.hpp"

namespace cfrs {

namespace {

constexpr int kMonotonicityGrid = 1001;
constexpr double kWeightSumTol = 1e-9;

}  // namespace

WeightVector::WeightVector(std::vector<double> weights) : weights_(std::move(weights)) {
  if (weights_.empty()) throw DomainError("weight vector must be nonempty");
  double sum = 0.0;
  for (double w : weights_) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw DomainError("weights must be finite and nonnegative");
    sum += w;
  }
  if (std::abs(sum - 1.0) > kWeightSumTol) {
    throw DomainError("weights must sum to 1, got " + std::to_string(sum));
  }
}

WeightVector WeightVector::uniform(std::size_t n) {
  if (n == 0) throw DomainError("weight vector must be nonempty");
  return WeightVector(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

WeightVector WeightVector::additive(std::size_t n) {
  if (n == 0) throw DomainError("weight vector must be nonempty");
  std::vector<double> w(n);
  const double denom = static_cast<double>(n) * static_cast<double>(n + 1);
  for (std::size_t i = 0; i < n; ++i) w[i] = 2.0 * static_cast<double>(i + 1) / denom;
  return WeightVector(std::move(w));
}

WeightVector WeightVector::reversed() const {
  return WeightVector(std::vector<double>(weights_.rbegin(), weights_.rend()));
}

// ---------------------------------------------------------------------------

Quantifier Quantifier::universal() {
  Quantifier q(Kind::universal);
  q.validate();
  return q;
}

Quantifier Quantifier::existential() {
  Quantifier q(Kind::existential);
  q.validate();
  return q;
}

Quantifier Quantifier::quadratic(double alpha, double beta) {
  if (!(alpha >= 0.0 && alpha < beta && beta <= 1.0)) {
    throw DomainError("quadratic quantifier requires 0 <= alpha < beta <= 1");
  }
  Quantifier q(Kind::quadratic);
  q.alpha_ = alpha;
  q.beta_ = beta;
  q.validate();
  return q;
}

Quantifier Quantifier::additive(std::size_t n) {
  if (n == 0) throw DomainError("additive quantifier requires n >= 1");
  Quantifier q(Kind::additive);
  q.n_ = n;
  q.validate();
  return q;
}

Quantifier Quantifier::step(WeightVector weights) {
  Quantifier q(Kind::step);
  q.n_ = weights.size();
  q.cumulative_.resize(q.n_ + 1, 0.0);
  for (std::size_t i = 0; i < q.n_; ++i) q.cumulative_[i + 1] = q.cumulative_[i] + weights[i];
  q.cumulative_.back() = 1.0;
  q.validate();
  return q;
}

std::string Quantifier::describe() const {
  std::ostringstream os;
  os.precision(17);
  switch (kind_) {
    case Kind::universal:
      return "universal";
    case Kind::existential:
      return "existential";
    case Kind::quadratic:
      os << "quadratic(" << alpha_ << "," << beta_ << ")";
      return os.str();
    case Kind::additive:
      os << "additive(" << n_ << ")";
      return os.str();
    case Kind::step:
      os << "step(" << n_ << ")";
      return os.str();
  }
  return "?";
}

double Quantifier::operator()(double p) const {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("quantifier argument must be in [0,1]");
  return eval_unchecked(p);
}

double Quantifier::eval_unchecked(double p) const {
  switch (kind_) {
    case Kind::universal:
      return p >= 1.0 ? 1.0 : 0.0;
    case Kind::existential:
      return p > 0.0 ? 1.0 : 0.0;
    case Kind::quadratic: {
      const double width = beta_ - alpha_;
      if (p <= alpha_) return 0.0;
      if (p <= 0.5 * (alpha_ + beta_)) return 2.0 * (p - alpha_) * (p - alpha_) / (width * width);
      if (p <= beta_) return 1.0 - 2.0 * (p - beta_) * (p - beta_) / (width * width);
      return 1.0;
    }
    case Kind::additive: {
      const double n = static_cast<double>(n_);
      return p * (p * n + 1.0) / (n + 1.0);
    }
    case Kind::step: {
      // Tolerance keeps grid points i/n, computed in floating point, on their own step.
      const double scaled = p * static_cast<double>(n_) + 1e-9;
      const auto i = std::min(static_cast<std::size_t>(std::floor(scaled)), n_);
      return cumulative_[i];
    }
  }
  return 0.0;
}

void Quantifier::validate() const {
  if (eval_unchecked(0.0) != 0.0 || eval_unchecked(1.0) != 1.0) {
    throw DomainError("quantifier " + describe() + " violates Q(0)=0, Q(1)=1");
  }
  double prev = 0.0;
  for (int i = 0; i < kMonotonicityGrid; ++i) {
    const double v = eval_unchecked(static_cast<double>(i) / (kMonotonicityGrid - 1));
    if (v < prev - 1e-12 || v < 0.0 || v > 1.0) {
      throw DomainError("quantifier " + describe() + " is not a nondecreasing map into [0,1]");
    }
    prev = v;
  }
}

double eval_quantifier(const Quantifier& q, double p) { return q(p); }

WeightVector weights_from_quantifier(const Quantifier& q, std::size_t n) {
  if (n == 0) throw DomainError("weight vector length must be positive");
  std::vector<double> w(n);
  const double dn = static_cast<double>(n);
  double prev = q.eval_unchecked(0.0);
  for (std::size_t i = 1; i <= n; ++i) {
    const double cur = q.eval_unchecked(i == n ? 1.0 : static_cast<double>(i) / dn);
    w[i - 1] = std::max(cur - prev, 0.0);
    prev = cur;
  }
  return WeightVector(std::move(w));
}

Quantifier quantifier_from_weights(const WeightVector& w) { return Quantifier::step(w); }

double orness(const WeightVector& w) {
  const std::size_t n = w.size();
  if (n < 2) throw DomainError("orness requires at least two weights");
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += static_cast<double>(n - 1 - i) * w[i];
  return acc / static_cast<double>(n - 1);
}

double andness(const WeightVector& w) { return 1.0 - orness(w); }

double zadeh_eval(const Quantifier& q, const FuzzySet& a) {
  const double proportion = a.cardinality() / static_cast<double>(a.size());
  return q(std::clamp(proportion, 0.0, 1.0));
}

double yager_eval(const Quantifier& q, const FuzzySet& a) {
  return owa(a.memberships(), weights_from_quantifier(q, a.size()));
}

}  // namespace cfrs
