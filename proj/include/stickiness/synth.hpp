#pragma once

#include "stickiness/linear_models.hpp"
#include "stickiness/market_data.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace stickiness
{

/// Ground truth for a synthetic market with one (possibly sticky) stock.
struct SynthSpec
{
    std::size_t horizon = 500;
    double market_vol = 0.01;
    double coupling = 1.0;
    /// Optional per-day coupling; overrides `coupling` when non-empty (length = horizon).
    std::vector<double> coupling_schedule;
    std::size_t window = 20;
    double rc_true = 0.0;
    double obs_noise = 0.0;
    std::uint64_t seed = 0;

    /// Throws ConfigError when an invariant is violated.
    void validate() const;
};

/// i.i.d. N(0, market_vol^2) returns, deterministic in the seed.
std::vector<double> generate_market(const SynthSpec &spec);

/// The true coupling, defined on every day.
CouplingSeries true_coupling(const SynthSpec &spec);

/**
 * Stock returns from the stick-slip model run forward on `r_m`, plus additive
 * Gaussian observation noise.
 *
 * The warm-up days [0, window) and the scored days [window, horizon) each start
 * from a clean state, matching how the estimator restarts after calibration.
 */
std::vector<double> plant_sticky_stock(std::span<const double> r_m, const SynthSpec &spec);

/**
 * Price panel whose open-close returns reproduce the synthetic series:
 * `market_stocks` identical-return stocks MKT1..MKTk and one stock STK. The
 * leave-one-out return for STK is therefore exactly the generated market.
 * Each day opens at the previous close; dates are consecutive weekdays from 2015-01-05.
 */
PricePanel synth_panel(std::span<const double> r_m, std::span<const double> r_i, std::size_t market_stocks = 1);

} // namespace stickiness
