#pragma once

// Brute-force reference computations for tests. These deliberately avoid the
// library's code paths: long double accumulation, one-pass textbook formulas,
// direct loops over the definitions.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <vector>

namespace oracle
{

inline std::vector<double> random_series(std::size_t n, double scale, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> z(0.0, scale);
    std::vector<double> out(n);
    for (auto &x : out)
        x = z(rng);
    return out;
}

/// Sample covariance via sum(xy) - n*mx*my in long double.
inline long double covariance(const std::vector<double> &x, const std::vector<double> &y, std::size_t from,
                              std::size_t count)
{
    long double sx = 0, sy = 0, sxy = 0;
    for (std::size_t k = from; k < from + count; ++k)
    {
        sx += x[k];
        sy += y[k];
        sxy += static_cast<long double>(x[k]) * y[k];
    }
    const long double n = count;
    return (sxy - sx * sy / n) / (n - 1);
}

inline double beta(const std::vector<double> &y, const std::vector<double> &x)
{
    return static_cast<double>(covariance(y, x, 0, x.size()) / covariance(x, x, 0, x.size()));
}

/// Rolling coupling at t over (t-window, t].
inline double vol_ratio_at(const std::vector<double> &ri, const std::vector<double> &rm, std::size_t t,
                           std::size_t window)
{
    const std::size_t from = t + 1 - window;
    return static_cast<double>(std::sqrt(covariance(ri, ri, from, window)) /
                               std::sqrt(covariance(rm, rm, from, window)));
}

inline double beta_at(const std::vector<double> &ri, const std::vector<double> &rm, std::size_t t, std::size_t window)
{
    const std::size_t from = t + 1 - window;
    return static_cast<double>(covariance(ri, rm, from, window) / covariance(rm, rm, from, window));
}

struct Moments
{
    double mean, stdev;
    std::optional<double> skew, kurt;
};

/// Moments of e = pred - actual from raw power sums.
inline Moments moments(const std::vector<double> &pred, const std::vector<double> &actual)
{
    const std::size_t n = pred.size();
    std::vector<long double> e(n);
    long double s1 = 0;
    for (std::size_t k = 0; k < n; ++k)
    {
        e[k] = static_cast<long double>(pred[k]) - actual[k];
        s1 += e[k];
    }
    const long double mu = s1 / n;
    long double c2 = 0, c3 = 0, c4 = 0;
    for (auto v : e)
    {
        c2 += std::pow(v - mu, 2);
        c3 += std::pow(v - mu, 3);
        c4 += std::pow(v - mu, 4);
    }
    Moments m{static_cast<double>(mu), static_cast<double>(std::sqrt(c2 / (n - 1))), {}, {}};
    if (c2 > 0)
    {
        const long double v = c2 / n;
        m.skew = static_cast<double>((c3 / n) / std::pow(v, 1.5L));
        m.kurt = static_cast<double>((c4 / n) / (v * v));
    }
    return m;
}

/// Direct transcription of the threshold recursion with explicit cumulative sums:
/// the stress is recomputed as the sum of market returns since the last slip.
struct HandTrace
{
    std::vector<double> stress;
    std::vector<bool> slipped;
    std::vector<double> prediction;
};

inline HandTrace stickslip(const std::vector<double> &rm, const std::vector<double> &g, double rc, std::size_t start)
{
    HandTrace h;
    const std::size_t T = rm.size();
    h.stress.assign(T, std::numeric_limits<double>::quiet_NaN());
    h.slipped.assign(T, false);
    h.prediction.assign(T, std::numeric_limits<double>::quiet_NaN());
    std::size_t since = start;
    for (std::size_t t = start; t < T; ++t)
    {
        double s = 0.0;
        for (std::size_t u = since; u <= t; ++u)
            s += rm[u];
        h.stress[t] = s;
        h.slipped[t] = std::fabs(g[t] * s) > rc;
        h.prediction[t] = h.slipped[t] ? g[t] * s : 0.0;
        if (h.slipped[t])
            since = t + 1;
    }
    return h;
}

inline double sum_sq_error(const std::vector<double> &p, const std::vector<double> &a, std::size_t from)
{
    long double s = 0;
    for (std::size_t t = from; t < p.size(); ++t)
        s += std::pow(static_cast<long double>(p[t]) - a[t], 2);
    return static_cast<double>(s);
}

inline double rel_diff(double a, double b)
{
    const double scale = std::max({std::fabs(a), std::fabs(b), 1e-300});
    return std::fabs(a - b) / scale;
}

} // namespace oracle
