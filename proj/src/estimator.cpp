#include "stickiness/estimator.hpp"

#include "stickiness/errors.hpp"
#include "stickiness/stickslip.hpp"

#include <algorithm>
#include <cmath>

namespace stickiness
{

std::vector<double> default_rc_grid(double max, double step)
{
    if (!(max >= 0.0) || !(step > 0.0))
        throw ConfigError("threshold grid needs max >= 0 and step > 0");
    const auto n = static_cast<std::size_t>(std::floor(max / step + 1e-9)) + 1;
    std::vector<double> grid(n);
    for (std::size_t k = 0; k < n; ++k)
        grid[k] = static_cast<double>(k) * step;
    return grid;
}

double model_error(std::span<const double> prediction, std::span<const double> actual, ScoredRange range)
{
    if (range.empty())
        throw DegenerateInputError("model_error: empty scored range");
    if (range.last > prediction.size() || range.last > actual.size())
        throw DegenerateInputError("model_error: scored range exceeds the series");
    double sum = 0.0;
    for (std::size_t t = range.first; t < range.last; ++t)
    {
        const double e = prediction[t] - actual[t];
        sum += e * e;
    }
    return sum;
}

ErrorCurve scan_rc(std::span<const double> r_i, std::span<const double> r_m, const CouplingSeries &g,
                   std::span<const double> grid)
{
    if (grid.empty() || grid.front() != 0.0)
        throw ConfigError("threshold grid must start at 0");
    for (std::size_t k = 1; k < grid.size(); ++k)
        if (!(grid[k] > grid[k - 1]))
            throw ConfigError("threshold grid must be strictly increasing");
    if (r_i.size() != r_m.size())
        throw DegenerateInputError("scan_rc: stock and market series lengths differ");

    ErrorCurve curve;
    curve.grid.assign(grid.begin(), grid.end());
    curve.error.resize(grid.size());
    curve.scored = ScoredRange{g.first_defined, r_m.size()};

    std::vector<double> prediction(r_m.size());
    for (std::size_t k = 0; k < grid.size(); ++k)
    {
        stickslip_predictions(r_m, g, grid[k], prediction);
        curve.error[k] = model_error(prediction, r_i, curve.scored);
    }
    return curve;
}

std::size_t find_rc_min_index(const ErrorCurve &curve)
{
    if (curve.error.empty())
        throw DegenerateInputError("find_rc_min: empty curve");
    std::size_t best = 0;
    for (std::size_t k = 1; k < curve.error.size(); ++k)
        if (curve.error[k] < curve.error[best])
            best = k;
    return best;
}

RcMinimum find_rc_min(const ErrorCurve &curve)
{
    const auto k = find_rc_min_index(curve);
    return {curve.grid[k], curve.error[k]};
}

StickinessDecision classify_stickiness(const ErrorCurve &curve, std::span<const double> noise_grid,
                                       std::span<const double> noise10)
{
    if (noise_grid.size() != curve.grid.size() || noise10.size() != curve.grid.size() ||
        !std::equal(noise_grid.begin(), noise_grid.end(), curve.grid.begin()))
        throw InterfaceError("noise envelope and error curve use different threshold grids");

    const auto k = find_rc_min_index(curve);
    StickinessDecision d;
    d.rc_min = curve.grid[k];
    d.e_min = curve.error[k];
    d.e_zero = curve.error.front();
    d.noise10_at_min = noise10[k];
    d.sticky = d.e_min < d.e_zero && d.e_min < d.noise10_at_min;
    return d;
}

} // namespace stickiness
