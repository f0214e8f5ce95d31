#pragma once

#include "stickiness/linear_models.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace stickiness
{

/**
 * Output of one stick-slip run for a single stock.
 *
 * All vectors span the full input length; entries before `start` (the first
 * index where the coupling is defined) are NaN / false and are never scored.
 *
 * For t >= start:
 *   stress[t]     = r_m[t]                  if slipped[t-1] (or t == start)
 *                 = stress[t-1] + r_m[t]    otherwise
 *   slipped[t]    = |g[t] * stress[t]| > rc
 *   prediction[t] = slipped[t] ? g[t] * stress[t] : 0
 */
struct StickSlipTrace
{
    double rc = 0.0;
    std::size_t start = 0;
    std::vector<double> stress;
    std::vector<bool> slipped;
    std::vector<double> prediction;

    std::size_t size() const noexcept { return prediction.size(); }
};

/// Run the threshold dynamics. Throws DomainError for rc < 0 and InterfaceError
/// when the coupling and market series differ in length.
StickSlipTrace simulate_stickslip(std::span<const double> r_m, const CouplingSeries &g, double rc);

/// Predictions only; same recursion as `simulate_stickslip` without the trace bookkeeping.
void stickslip_predictions(std::span<const double> r_m, const CouplingSeries &g, double rc,
                           std::span<double> prediction);

struct OscillationStats
{
    std::size_t steps = 0;
    std::size_t slip_count = 0;
    /// Mean gap in steps between consecutive slips; 0 with fewer than two slips.
    double mean_interval = 0.0;
    double max_abs_stress = 0.0;
};

OscillationStats oscillation_stats(const StickSlipTrace &trace);

} // namespace stickiness
