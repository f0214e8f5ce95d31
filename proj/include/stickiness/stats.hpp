#pragma once

#include <span>
#include <vector>

namespace stickiness::stats
{

double mean(std::span<const double> x);

/// Sample variance (divisor n-1).
double variance(std::span<const double> x);

/// Sample covariance (divisor n-1). Both spans must have equal length.
double covariance(std::span<const double> x, std::span<const double> y);

/// True when every element equals the first one exactly.
bool is_constant(std::span<const double> x);

/// Percentile with linear interpolation between closest order statistics
/// (inclusive definition: h = (n-1)p). `p` in [0, 1]; `sorted` ascending.
double percentile_sorted(std::span<const double> sorted, double p);

/// Percentile of unsorted data; copies and sorts.
double percentile(std::vector<double> values, double p);

} // namespace stickiness::stats
