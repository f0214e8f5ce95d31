#pragma once

#include "stickiness/market_data.hpp"

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace stickiness
{

// ---------------------------------------------------------------------------
// CAPM

/// Market beta of a stock. The risk-free rate is fixed at zero for daily returns.
struct CapmFit
{
    double beta = 0.0;
    static constexpr double risk_free = 0.0;
};

/// beta = Covar(r_i, r_m) / Var(r_m). Throws DegenerateInputError for fewer
/// than 2 points, unequal lengths or a constant market series.
CapmFit capm_beta(std::span<const double> r_i, std::span<const double> r_m);

std::vector<double> capm_predict(const CapmFit &fit, std::span<const double> r_m);

// ---------------------------------------------------------------------------
// Capitalization-weighted factor model

/// 1 - exp(-cap_i / (cap_rest * delta)). Throws DomainError for non-positive input.
double cap_alpha(double cap_i, double cap_rest, double delta);

struct CapWeightParams
{
    std::vector<std::string> tickers;
    std::vector<double> cap;
    std::vector<double> cap_rest;
    double delta = 0.0;
    std::vector<double> gamma;
    std::vector<double> alpha;
    /// Total in-sample squared error at `delta`, summed over stocks.
    double in_sample_error = 0.0;
};

struct CapModelOptions
{
    std::vector<double> delta_grid;
    /// Trailing window used for the gamma regressions; min(window, in-sample length) is used.
    std::size_t smoothing_window = 250;
};

/// 200 log-spaced points on [1e-5, 1].
std::vector<double> default_delta_grid();

/**
 * Calibrate delta and the per-stock gammas on the in-sample part of the panel.
 *
 * For each delta on the grid, gamma_i is the least-squares slope of r_i on
 * alpha_i * r_{M-i} over the trailing smoothing window; the delta with the
 * smallest total in-sample squared error wins. Deltas whose errors agree to
 * 1e-12 relative count as tied and the smallest of them is kept.
 *
 * `caps` is aligned with the panel's tickers.
 */
CapWeightParams fit_cap_model(const PricePanel &panel, std::span<const double> caps, const DateRange &in_sample,
                              const CapModelOptions &options = {});

/// alpha_i * gamma_i * r_m for stock `i` of a fitted model.
std::vector<double> cap_model_predict(const CapWeightParams &params, std::size_t i, std::span<const double> r_m);

/// Read `ticker,capitalization` rows (header required).
std::map<std::string, double> load_capitalizations(const std::filesystem::path &path);

/// Capitalizations in the panel's ticker order; throws LookupError for any missing ticker.
std::vector<double> align_capitalizations(const std::map<std::string, double> &caps,
                                          const std::vector<std::string> &tickers);

// ---------------------------------------------------------------------------
// Yard-stick model

enum class CouplingMode
{
    VolRatio,
    CovarianceBeta,
    Constant,
};

const char *to_string(CouplingMode mode);
CouplingMode parse_coupling_mode(const std::string &text);

/**
 * Time-varying coupling g[t] between a stock and its market complement.
 *
 * `g` has one slot per observation; slots before `first_defined` hold NaN.
 * g[t] only depends on observations at or before t.
 */
struct CouplingSeries
{
    CouplingMode mode = CouplingMode::VolRatio;
    std::size_t window = 0;
    std::size_t first_defined = 0;
    std::vector<double> g;

    std::size_t size() const noexcept { return g.size(); }
    bool defined_at(std::size_t t) const noexcept { return t >= first_defined && t < g.size(); }

    /// Known coupling `value` on every index from `first_defined` on.
    static CouplingSeries constant(std::size_t length, double value, std::size_t first_defined);
};

/**
 * Rolling coupling over the trailing window (t-window, t], defined for t >= window
 * so that the first `window` observations only calibrate.
 *
 * VolRatio: stdev(r_i) / stdev(r_m). CovarianceBeta: Covar(r_i, r_m) / Var(r_m).
 * Throws DegenerateWindowError when a window has zero dispersion.
 */
CouplingSeries coupling_series(std::span<const double> r_i, std::span<const double> r_m, CouplingMode mode,
                               std::size_t window);

/// g[t] * r_m[t] where g is defined, NaN elsewhere.
std::vector<double> yardstick_predict(const CouplingSeries &g, std::span<const double> r_m);

// ---------------------------------------------------------------------------
// Forecast errors

/// Moments of (pred - actual). Skewness and kurtosis are the standardized third
/// and fourth central moments (kurtosis is raw, not excess) and are empty when
/// the error has zero variance.
struct ErrorMoments
{
    std::size_t n = 0;
    double mean = 0.0;
    double stdev = 0.0;
    std::optional<double> skewness;
    std::optional<double> kurtosis;
};

ErrorMoments forecast_moments(std::span<const double> pred, std::span<const double> actual);

} // namespace stickiness
