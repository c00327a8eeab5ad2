#include "cfrs/choquet.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

namespace cfrs {

namespace {

void check_valuation(std::span<const double> f, const Measure& mu) {
  if (f.size() != mu.size()) throw DomainError("valuation and measure live on different universes");
  for (double v : f) {
    if (!std::isfinite(v)) throw DomainError("valuation values must be finite");
  }
}

}  // namespace

std::vector<std::size_t> ascending_order(std::span<const double> f) {
  std::vector<std::size_t> order(f.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return f[a] < f[b]; });
  return order;
}

double choquet_integral(std::span<const double> f, const Measure& mu) {
  check_valuation(f, mu);
  const auto order = ascending_order(f);
  const auto levels = mu.chain(order);
  double sum = 0.0;
  double previous = 0.0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const double current = f[order[i]];
    sum += levels[i] * (current - previous);
    previous = current;
  }
  return sum;
}

double choquet_integral(const FuzzySet& f, const Measure& mu) { return choquet_integral(f.memberships(), mu); }

double choquet_integral_mass_form(std::span<const double> f, const Measure& mu) {
  check_valuation(f, mu);
  const auto order = ascending_order(f);
  const auto levels = mu.chain(order);
  double sum = 0.0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const double next = i + 1 < order.size() ? levels[i + 1] : 0.0;
    sum += f[order[i]] * (levels[i] - next);
  }
  return sum;
}

double owa(std::span<const double> f, const WeightVector& w) {
  if (f.size() != w.size()) throw DomainError("OWA needs as many weights as values");
  std::vector<double> sorted(f.begin(), f.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double sum = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) sum += sorted[i] * w[i];
  return sum;
}

}  // namespace cfrs
