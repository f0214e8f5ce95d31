#include "stickiness/stats.hpp"

#include "stickiness/errors.hpp"

#include <algorithm>
#include <cmath>

namespace stickiness::stats
{

double mean(std::span<const double> x)
{
    if (x.empty())
        throw DegenerateInputError("mean of empty series");
    double sum = 0.0;
    for (double v : x)
        sum += v;
    return sum / static_cast<double>(x.size());
}

double variance(std::span<const double> x) { return covariance(x, x); }

double covariance(std::span<const double> x, std::span<const double> y)
{
    if (x.size() != y.size())
        throw DegenerateInputError("covariance of series with different lengths");
    if (x.size() < 2)
        throw DegenerateInputError("covariance needs at least 2 observations");
    const double mx = mean(x);
    const double my = mean(y);
    double s = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k)
        s += (x[k] - mx) * (y[k] - my);
    return s / static_cast<double>(x.size() - 1);
}

bool is_constant(std::span<const double> x)
{
    return std::all_of(x.begin(), x.end(), [&](double v) { return v == x.front(); });
}

double percentile_sorted(std::span<const double> sorted, double p)
{
    if (sorted.empty())
        throw DegenerateInputError("percentile of empty sample");
    if (!(p >= 0.0 && p <= 1.0))
        throw DomainError("percentile level must lie in [0, 1]");
    const double h = p * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const auto hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = h - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

double percentile(std::vector<double> values, double p)
{
    std::sort(values.begin(), values.end());
    return percentile_sorted(values, p);
}

} // namespace stickiness::stats
