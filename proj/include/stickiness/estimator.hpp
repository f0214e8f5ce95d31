#pragma once

#include "stickiness/linear_models.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace stickiness
{

/// Half-open index range [first, last) of scored observations.
struct ScoredRange
{
    std::size_t first = 0;
    std::size_t last = 0;

    std::size_t size() const noexcept { return last > first ? last - first : 0; }
    bool empty() const noexcept { return size() == 0; }
};

/// Squared-error curve over a threshold grid. grid[0] is 0, so error[0] is the
/// yard-stick (no-threshold) error.
struct ErrorCurve
{
    std::vector<double> grid;
    std::vector<double> error;
    ScoredRange scored;
};

struct StickinessDecision
{
    double rc_min = 0.0;
    double e_min = 0.0;
    double e_zero = 0.0;
    double noise10_at_min = 0.0;
    bool sticky = false;
};

/// 0, step, 2*step, ... up to and including `max` (within rounding). `max` = 0 gives {0}.
std::vector<double> default_rc_grid(double max = 0.05, double step = 1e-4);

/// Sum over `range` of (prediction - actual)^2. Throws DegenerateInputError for an
/// empty range or one that does not fit both series.
double model_error(std::span<const double> prediction, std::span<const double> actual, ScoredRange range);

/// Score every stick-slip threshold on `grid` against `r_i`. The scored range
/// starts where the coupling is defined. Grid must be strictly increasing from 0.
ErrorCurve scan_rc(std::span<const double> r_i, std::span<const double> r_m, const CouplingSeries &g,
                   std::span<const double> grid);

/// Global minimum of the curve; ties go to the smallest threshold. Returns the grid index.
std::size_t find_rc_min_index(const ErrorCurve &curve);

struct RcMinimum
{
    double rc = 0.0;
    double error = 0.0;
};
RcMinimum find_rc_min(const ErrorCurve &curve);

/**
 * A stock is sticky iff its minimum error beats both the no-threshold error
 * and the 10th-percentile noise error at the minimizing threshold.
 * `noise_grid` must equal the curve's grid exactly (InterfaceError otherwise).
 */
StickinessDecision classify_stickiness(const ErrorCurve &curve, std::span<const double> noise_grid,
                                       std::span<const double> noise10);

} // namespace stickiness
