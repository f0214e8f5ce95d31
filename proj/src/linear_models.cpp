#include "stickiness/linear_models.hpp"

#include "stickiness/errors.hpp"
#include "stickiness/stats.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>

namespace stickiness
{

namespace
{

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string_view trim(std::string_view s)
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

} // namespace

// ---------------------------------------------------------------------------
// CAPM

CapmFit capm_beta(std::span<const double> r_i, std::span<const double> r_m)
{
    if (r_i.size() != r_m.size())
        throw DegenerateInputError("capm_beta: series lengths differ");
    if (r_m.size() < 2)
        throw DegenerateInputError("capm_beta: need at least 2 observations");
    if (stats::is_constant(r_m))
        throw DegenerateInputError("capm_beta: market series has zero variance");
    const double var = stats::variance(r_m);
    if (!(var > 0.0))
        throw DegenerateInputError("capm_beta: market series has zero variance");
    return CapmFit{stats::covariance(r_i, r_m) / var};
}

std::vector<double> capm_predict(const CapmFit &fit, std::span<const double> r_m)
{
    std::vector<double> out(r_m.size());
    std::transform(r_m.begin(), r_m.end(), out.begin(), [&](double x) { return fit.beta * x; });
    return out;
}

// ---------------------------------------------------------------------------
// Capitalization model

double cap_alpha(double cap_i, double cap_rest, double delta)
{
    if (!(cap_i > 0.0) || !(cap_rest > 0.0) || !(delta > 0.0))
        throw DomainError("cap_alpha: capitalizations and delta must be positive");
    return -std::expm1(-cap_i / (cap_rest * delta));
}

std::vector<double> default_delta_grid()
{
    constexpr std::size_t n = 200;
    constexpr double lo = -5.0;
    constexpr double hi = 0.0;
    std::vector<double> grid(n);
    for (std::size_t k = 0; k < n; ++k)
        grid[k] = std::pow(10.0, lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n - 1));
    return grid;
}

CapWeightParams fit_cap_model(const PricePanel &panel, std::span<const double> caps, const DateRange &in_sample,
                              const CapModelOptions &options)
{
    if (caps.size() != panel.num_stocks())
        throw InterfaceError("fit_cap_model: one capitalization per stock required");
    const auto delta_grid = options.delta_grid.empty() ? default_delta_grid() : options.delta_grid;
    if (options.smoothing_window < 2)
        throw ConfigError("fit_cap_model: smoothing window must be at least 2");

    const PricePanel sample = panel.slice(in_sample);
    const std::size_t n = sample.num_dates();
    if (n < 2)
        throw DegenerateInputError("fit_cap_model: in-sample window shorter than 2 observations");

    const std::size_t N = panel.num_stocks();
    const ReturnPanel returns = open_close_returns(sample);
    std::vector<std::vector<double>> complements(N);
    for (std::size_t i = 0; i < N; ++i)
        complements[i] = complement_return(sample, sample.tickers()[i]).r_m;

    for (double k : caps)
    {
        if (!(k > 0.0))
            throw DomainError("fit_cap_model: capitalizations must be positive");
    }

    CapWeightParams best;
    best.tickers = panel.tickers();
    best.cap.assign(caps.begin(), caps.end());
    best.cap_rest.resize(N);
    for (std::size_t i = 0; i < N; ++i)
    {
        double rest = 0.0;
        for (std::size_t j = 0; j < N; ++j)
            if (j != i)
                rest += caps[j];
        best.cap_rest[i] = rest;
    }

    const std::size_t w = std::min(options.smoothing_window, n);
    const std::size_t w0 = n - w;
    bool have_best = false;

    std::vector<double> x(n);
    for (double delta : delta_grid)
    {
        if (!(delta > 0.0))
            throw DomainError("fit_cap_model: delta grid values must be positive");
        std::vector<double> gamma(N), alpha(N);
        double err = 0.0;
        for (std::size_t i = 0; i < N; ++i)
        {
            alpha[i] = cap_alpha(best.cap[i], best.cap_rest[i], delta);
            for (std::size_t t = 0; t < n; ++t)
                x[t] = alpha[i] * complements[i][t];
            const std::span<const double> xs(x.data() + w0, w);
            const std::span<const double> ys(returns.r[i].data() + w0, w);
            gamma[i] = capm_beta(ys, xs).beta;
            for (std::size_t t = 0; t < n; ++t)
            {
                const double e = gamma[i] * x[t] - returns.r[i][t];
                err += e * e;
            }
        }
        const bool better =
            !have_best || err < best.in_sample_error * (1.0 - 1e-12) - std::numeric_limits<double>::min();
        if (better)
        {
            best.delta = delta;
            best.gamma = std::move(gamma);
            best.alpha = std::move(alpha);
            best.in_sample_error = err;
            have_best = true;
        }
    }
    return best;
}

std::vector<double> cap_model_predict(const CapWeightParams &params, std::size_t i, std::span<const double> r_m)
{
    const double k = params.alpha.at(i) * params.gamma.at(i);
    std::vector<double> out(r_m.size());
    std::transform(r_m.begin(), r_m.end(), out.begin(), [&](double x) { return k * x; });
    return out;
}

std::map<std::string, double> load_capitalizations(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in)
        throw ValidationError("cannot open capitalization file " + path.string());
    std::string line;
    if (!std::getline(in, line) || trim(line) != "ticker,capitalization")
        throw ValidationError("capitalization file must start with 'ticker,capitalization'");

    std::map<std::string, double> caps;
    while (std::getline(in, line))
    {
        const auto row = trim(line);
        if (row.empty())
            continue;
        const auto comma = row.find(',');
        if (comma == std::string_view::npos)
            throw ValidationError("bad capitalization row '" + std::string(row) + "'");
        const auto ticker = std::string(trim(row.substr(0, comma)));
        const auto value_text = trim(row.substr(comma + 1));
        double value = 0.0;
        auto [ptr, ec] = std::from_chars(value_text.data(), value_text.data() + value_text.size(), value);
        if (ec != std::errc{} || ptr != value_text.data() + value_text.size())
            throw ValidationError("bad capitalization for " + ticker);
        if (!(value > 0.0) || !std::isfinite(value))
            throw ValidationError("capitalization for " + ticker + " must be positive");
        if (!caps.emplace(ticker, value).second)
            throw ValidationError("duplicate capitalization for " + ticker);
    }
    return caps;
}

std::vector<double> align_capitalizations(const std::map<std::string, double> &caps,
                                          const std::vector<std::string> &tickers)
{
    std::vector<double> out;
    out.reserve(tickers.size());
    for (const auto &t : tickers)
    {
        const auto it = caps.find(t);
        if (it == caps.end())
            throw LookupError("no capitalization for " + t);
        out.push_back(it->second);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Coupling

const char *to_string(CouplingMode mode)
{
    switch (mode)
    {
    case CouplingMode::VolRatio:
        return "vol-ratio";
    case CouplingMode::CovarianceBeta:
        return "beta";
    case CouplingMode::Constant:
        return "constant";
    }
    return "?";
}

CouplingMode parse_coupling_mode(const std::string &text)
{
    if (text == "vol-ratio")
        return CouplingMode::VolRatio;
    if (text == "beta" || text == "covariance-beta")
        return CouplingMode::CovarianceBeta;
    throw ConfigError("unknown coupling mode '" + text + "' (expected vol-ratio or beta)");
}

CouplingSeries CouplingSeries::constant(std::size_t length, double value, std::size_t first_defined)
{
    CouplingSeries s;
    s.mode = CouplingMode::Constant;
    s.window = first_defined;
    s.first_defined = first_defined;
    s.g.assign(length, kNaN);
    for (std::size_t t = first_defined; t < length; ++t)
        s.g[t] = value;
    return s;
}

CouplingSeries coupling_series(std::span<const double> r_i, std::span<const double> r_m, CouplingMode mode,
                               std::size_t window)
{
    if (mode == CouplingMode::Constant)
        throw ConfigError("coupling_series: constant coupling is not estimated from data");
    if (window < 2)
        throw ConfigError("coupling_series: window must be at least 2");
    if (r_i.size() != r_m.size())
        throw DegenerateInputError("coupling_series: series lengths differ");
    if (r_i.size() <= window)
        throw DegenerateInputError("coupling_series: series must be longer than the window");

    CouplingSeries out;
    out.mode = mode;
    out.window = window;
    out.first_defined = window;
    out.g.assign(r_i.size(), kNaN);

    for (std::size_t t = window; t < r_i.size(); ++t)
    {
        const auto wi = r_i.subspan(t + 1 - window, window);
        const auto wm = r_m.subspan(t + 1 - window, window);
        if (stats::is_constant(wm))
            throw DegenerateWindowError(t);
        const double var_m = stats::variance(wm);
        if (mode == CouplingMode::VolRatio)
        {
            if (stats::is_constant(wi))
                throw DegenerateWindowError(t);
            out.g[t] = std::sqrt(stats::variance(wi)) / std::sqrt(var_m);
        }
        else
        {
            out.g[t] = stats::covariance(wi, wm) / var_m;
        }
        if (!std::isfinite(out.g[t]))
            throw DegenerateWindowError(t);
    }
    return out;
}

std::vector<double> yardstick_predict(const CouplingSeries &g, std::span<const double> r_m)
{
    if (g.size() != r_m.size())
        throw InterfaceError("yardstick_predict: coupling and market series lengths differ");
    std::vector<double> out(r_m.size(), kNaN);
    for (std::size_t t = g.first_defined; t < r_m.size(); ++t)
        out[t] = g.g[t] * r_m[t];
    return out;
}

// ---------------------------------------------------------------------------
// Moments

ErrorMoments forecast_moments(std::span<const double> pred, std::span<const double> actual)
{
    if (pred.size() != actual.size())
        throw DegenerateInputError("forecast_moments: series lengths differ");
    if (pred.size() < 4)
        throw DegenerateInputError("forecast_moments: need at least 4 observations");

    std::vector<double> e(pred.size());
    for (std::size_t t = 0; t < e.size(); ++t)
        e[t] = pred[t] - actual[t];

    ErrorMoments m;
    m.n = e.size();
    m.mean = stats::mean(e);
    double m2 = 0.0, m3 = 0.0, m4 = 0.0;
    for (double v : e)
    {
        const double d = v - m.mean;
        const double d2 = d * d;
        m2 += d2;
        m3 += d2 * d;
        m4 += d2 * d2;
    }
    const double n = static_cast<double>(e.size());
    m.stdev = std::sqrt(m2 / (n - 1.0));
    if (stats::is_constant(e) || !(m2 > 0.0))
    {
        m.stdev = 0.0;
        return m;
    }
    m2 /= n;
    m3 /= n;
    m4 /= n;
    m.skewness = m3 / std::pow(m2, 1.5);
    m.kurtosis = m4 / (m2 * m2);
    return m;
}

} // namespace stickiness
