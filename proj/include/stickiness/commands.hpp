#pragma once

#include "stickiness/bootstrap.hpp"
#include "stickiness/estimator.hpp"
#include "stickiness/linear_models.hpp"
#include "stickiness/market_data.hpp"
#include "stickiness/stickslip.hpp"
#include "stickiness/synth.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace stickiness
{

// ---------------------------------------------------------------------------
// Single-stock pipeline: coupling -> curve -> noise envelope -> decision.

struct EstimationOptions
{
    CouplingMode coupling = CouplingMode::VolRatio;
    std::size_t window = 20;
    std::vector<double> grid = default_rc_grid();
    std::size_t samples = 100;
    std::uint64_t seed = 1;
    ReshuffleMode reshuffle = ReshuffleMode::Joint;
};

struct StockEstimate
{
    CouplingSeries coupling;
    ErrorCurve curve;
    NoiseEnvelope noise;
    StickinessDecision decision;
    /// Trace at the minimizing threshold.
    StickSlipTrace trace;
};

StockEstimate estimate_stock(std::span<const double> r_i, std::span<const double> r_m,
                             const EstimationOptions &options);

// ---------------------------------------------------------------------------
// Commands. Each returns a process exit status and reports problems on `err`.

struct ReturnsConfig
{
    std::filesystem::path input;
    std::filesystem::path out_dir;
    ComplementConvention convention = ComplementConvention::OpenClose;
};

/// Writes returns.tsv, complements.tsv and manifest.json.
int run_returns(const ReturnsConfig &config, std::ostream &err);

struct EstimateConfig
{
    std::filesystem::path input;
    std::filesystem::path out_dir;
    std::optional<DateRange> period;
    EstimationOptions estimation;
    double grid_max = 0.05;
    double grid_step = 1e-4;
    ComplementConvention convention = ComplementConvention::OpenClose;
    unsigned threads = 0;
};

/// Writes report.tsv, curves/<T>.tsv, traces/<T>.tsv and manifest.json.
/// A stock that fails is reported as an NA row; the others still run.
int run_estimate(const EstimateConfig &config, std::ostream &err);

struct SynthConfig
{
    SynthSpec spec;
    std::size_t market_stocks = 1;
    std::filesystem::path output;
};

/// Writes a wide CSV panel and <output>.manifest.json.
int run_synth(const SynthConfig &config, std::ostream &err);

struct CompareConfig
{
    std::filesystem::path input;
    std::optional<std::filesystem::path> caps;
    DateRange in_sample;
    DateRange out_sample;
    std::size_t window = 20;
    std::size_t smoothing_window = 250;
    /// Subset of capm, cap, yardstick, zero. Empty means capm, yardstick and (with caps) cap.
    std::vector<std::string> models;
    std::filesystem::path out_dir;
};

/// Writes moments.tsv (pooled), moments_by_stock.tsv, scatter.tsv and manifest.json.
int run_compare(const CompareConfig &config, std::ostream &err);

} // namespace stickiness
