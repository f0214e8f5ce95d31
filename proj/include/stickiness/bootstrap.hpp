#pragma once

#include "stickiness/estimator.hpp"
#include "stickiness/linear_models.hpp"

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace stickiness
{

/// SplitMix64 finalizer.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Per-sample seed: splitmix64(seed ^ splitmix64(index + 1)).
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) noexcept;

/// Uniform integer in [0, n) by rejection sampling; identical on every platform.
std::uint64_t uniform_below(std::mt19937_64 &engine, std::uint64_t n);

enum class ReshuffleMode
{
    /// One permutation applied to both series; (r_i[t], r_m[t]) pairs stay together.
    Joint,
    /// Separate permutations for the stock and the market series.
    Independent,
};

const char *to_string(ReshuffleMode mode);
ReshuffleMode parse_reshuffle_mode(const std::string &text);

/**
 * Permute observations calib..T-1 of both series; the first `calib` observations
 * (the coupling warm-up) stay in place. Throws DegenerateInputError when
 * calib >= T or the lengths differ.
 */
std::pair<std::vector<double>, std::vector<double>> reshuffle_pair(std::span<const double> r_i,
                                                                   std::span<const double> r_m, std::size_t calib,
                                                                   std::uint64_t seed,
                                                                   ReshuffleMode mode = ReshuffleMode::Joint);

struct EnvelopeOptions
{
    CouplingMode coupling = CouplingMode::VolRatio;
    std::size_t window = 20;
    ReshuffleMode reshuffle = ReshuffleMode::Joint;
    std::size_t n_samples = 100;
    std::uint64_t seed = 0;
};

/// Per-threshold 10th and 90th percentile errors across reshuffled samples.
struct NoiseEnvelope
{
    std::vector<double> grid;
    std::vector<double> p10;
    std::vector<double> p90;
    std::size_t n_samples = 0;
    std::uint64_t seed = 0;
    /// Reshuffles tried, including degenerate ones that were redrawn.
    std::size_t attempts = 0;
};

/**
 * Reshuffle, recompute the coupling, rescan the grid, repeat `n_samples` times.
 *
 * Attempt a uses seed mix_seed(seed, a). A reshuffle whose coupling hits a
 * degenerate window is dropped and the next attempt is drawn; more than
 * 10 * n_samples attempts throws DegenerateInputError.
 */
NoiseEnvelope noise_envelope(std::span<const double> r_i, std::span<const double> r_m,
                             std::span<const double> grid, const EnvelopeOptions &options);

/// Envelope from precomputed curves (one per sample, all on `grid`).
NoiseEnvelope envelope_from_curves(std::span<const double> grid, const std::vector<std::vector<double>> &curves);

StickinessDecision classify_stickiness(const ErrorCurve &curve, const NoiseEnvelope &noise);

} // namespace stickiness
