#include "stickiness/bootstrap.hpp"

#include "stickiness/errors.hpp"
#include "stickiness/stats.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace stickiness
{

std::uint64_t splitmix64(std::uint64_t x) noexcept
{
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) noexcept
{
    return splitmix64(seed ^ splitmix64(index + 1));
}

std::uint64_t uniform_below(std::mt19937_64 &engine, std::uint64_t n)
{
    if (n == 0)
        throw DomainError("uniform_below: empty range");
    // Largest multiple of n that fits; draws above it are rejected.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t x;
    do
    {
        x = engine();
    } while (x >= limit);
    return x % n;
}

const char *to_string(ReshuffleMode mode)
{
    return mode == ReshuffleMode::Joint ? "joint" : "independent";
}

ReshuffleMode parse_reshuffle_mode(const std::string &text)
{
    if (text == "joint")
        return ReshuffleMode::Joint;
    if (text == "independent")
        return ReshuffleMode::Independent;
    throw ConfigError("unknown reshuffle mode '" + text + "' (expected joint or independent)");
}

namespace
{

std::vector<std::size_t> tail_permutation(std::size_t T, std::size_t calib, std::mt19937_64 &engine)
{
    std::vector<std::size_t> idx(T);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    // Fisher-Yates over the tail only.
    for (std::size_t k = T - 1; k > calib; --k)
    {
        const auto j = calib + static_cast<std::size_t>(uniform_below(engine, k - calib + 1));
        std::swap(idx[k], idx[j]);
    }
    return idx;
}

std::vector<double> apply(std::span<const double> x, const std::vector<std::size_t> &idx)
{
    std::vector<double> out(x.size());
    for (std::size_t t = 0; t < x.size(); ++t)
        out[t] = x[idx[t]];
    return out;
}

} // namespace

std::pair<std::vector<double>, std::vector<double>> reshuffle_pair(std::span<const double> r_i,
                                                                   std::span<const double> r_m, std::size_t calib,
                                                                   std::uint64_t seed, ReshuffleMode mode)
{
    if (r_i.size() != r_m.size())
        throw DegenerateInputError("reshuffle_pair: series lengths differ");
    if (calib >= r_i.size())
        throw DegenerateInputError("reshuffle_pair: warm-up covers the whole series");

    std::mt19937_64 engine(seed);
    const auto perm_i = tail_permutation(r_i.size(), calib, engine);
    if (mode == ReshuffleMode::Joint)
        return {apply(r_i, perm_i), apply(r_m, perm_i)};
    const auto perm_m = tail_permutation(r_m.size(), calib, engine);
    return {apply(r_i, perm_i), apply(r_m, perm_m)};
}

NoiseEnvelope envelope_from_curves(std::span<const double> grid, const std::vector<std::vector<double>> &curves)
{
    if (curves.empty())
        throw DegenerateInputError("noise envelope needs at least one sample");
    NoiseEnvelope env;
    env.grid.assign(grid.begin(), grid.end());
    env.p10.resize(grid.size());
    env.p90.resize(grid.size());
    env.n_samples = curves.size();

    std::vector<double> column(curves.size());
    for (std::size_t k = 0; k < grid.size(); ++k)
    {
        for (std::size_t s = 0; s < curves.size(); ++s)
        {
            if (curves[s].size() != grid.size())
                throw InterfaceError("noise sample curve does not match the grid");
            column[s] = curves[s][k];
        }
        std::sort(column.begin(), column.end());
        env.p10[k] = stats::percentile_sorted(column, 0.10);
        env.p90[k] = stats::percentile_sorted(column, 0.90);
    }
    return env;
}

NoiseEnvelope noise_envelope(std::span<const double> r_i, std::span<const double> r_m,
                             std::span<const double> grid, const EnvelopeOptions &options)
{
    if (options.n_samples < 2)
        throw ConfigError("noise envelope needs at least 2 samples");
    if (options.coupling == CouplingMode::Constant)
        throw ConfigError("noise envelope recomputes the coupling; constant coupling is not supported");

    const std::size_t max_attempts = 10 * options.n_samples;
    std::vector<std::vector<double>> curves;
    curves.reserve(options.n_samples);

    std::size_t attempt = 0;
    while (curves.size() < options.n_samples)
    {
        if (attempt >= max_attempts)
            throw DegenerateInputError("noise envelope: too many degenerate reshuffles (" +
                                       std::to_string(attempt) + " attempts)");
        const auto [si, sm] = reshuffle_pair(r_i, r_m, options.window, mix_seed(options.seed, attempt),
                                             options.reshuffle);
        ++attempt;
        CouplingSeries g;
        try
        {
            g = coupling_series(si, sm, options.coupling, options.window);
        }
        catch (const DegenerateWindowError &)
        {
            continue;
        }
        curves.push_back(scan_rc(si, sm, g, grid).error);
    }

    NoiseEnvelope env = envelope_from_curves(grid, curves);
    env.seed = options.seed;
    env.attempts = attempt;
    return env;
}

StickinessDecision classify_stickiness(const ErrorCurve &curve, const NoiseEnvelope &noise)
{
    return classify_stickiness(curve, noise.grid, noise.p10);
}

} // namespace stickiness
