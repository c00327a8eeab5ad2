#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "cfrs/measure.hpp"
#include "cfrs/quantifier.hpp"

namespace cfrs {

/// Indices of f sorted by ascending value; equal values keep index order.
std::vector<std::size_t> ascending_order(std::span<const double> f);

/// Choquet integral of f with respect to mu:
///   sum_i mu(A*_i) (f(x*_i) - f(x*_{i-1})),  f(x*_0) = 0,
/// where x* sorts f ascending and A*_i = {x*_i, ..., x*_n}.
/// Throws DomainError when f and mu have different sizes.
double choquet_integral(std::span<const double> f, const Measure& mu);
double choquet_integral(const FuzzySet& f, const Measure& mu);

/// The same integral in its mass form: sum_i f(x*_i) (mu(A*_i) - mu(A*_{i+1})).
double choquet_integral_mass_form(std::span<const double> f, const Measure& mu);

/// Ordered weighted average: w_1 weighs the largest value, w_n the smallest.
double owa(std::span<const double> f, const WeightVector& w);

}  // namespace cfrs
