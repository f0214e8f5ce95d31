#include "stickiness/synth.hpp"

#include "stickiness/bootstrap.hpp"
#include "stickiness/errors.hpp"
#include "stickiness/stickslip.hpp"

#include <cmath>
#include <random>
#include <string>

namespace stickiness
{

void SynthSpec::validate() const
{
    if (horizon <= window)
        throw ConfigError("synthetic horizon (" + std::to_string(horizon) + ") must exceed the coupling window (" +
                          std::to_string(window) + ")");
    if (!(market_vol > 0.0) || !std::isfinite(market_vol))
        throw ConfigError("market volatility must be positive");
    if (!(rc_true >= 0.0))
        throw ConfigError("planted threshold must be non-negative");
    if (!(obs_noise >= 0.0))
        throw ConfigError("observation noise must be non-negative");
    if (!coupling_schedule.empty() && coupling_schedule.size() != horizon)
        throw ConfigError("coupling schedule length must equal the horizon");
}

std::vector<double> generate_market(const SynthSpec &spec)
{
    spec.validate();
    std::mt19937_64 engine(mix_seed(spec.seed, 0));
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> r(spec.horizon);
    for (auto &x : r)
        x = spec.market_vol * normal(engine);
    return r;
}

CouplingSeries true_coupling(const SynthSpec &spec)
{
    if (spec.coupling_schedule.empty())
        return CouplingSeries::constant(spec.horizon, spec.coupling, 0);
    CouplingSeries g = CouplingSeries::constant(spec.horizon, 0.0, 0);
    g.g = spec.coupling_schedule;
    return g;
}

std::vector<double> plant_sticky_stock(std::span<const double> r_m, const SynthSpec &spec)
{
    spec.validate();
    if (r_m.size() != spec.horizon)
        throw InterfaceError("market series length differs from the synthetic horizon");

    const CouplingSeries full = true_coupling(spec);

    CouplingSeries warm = full;
    warm.g.resize(spec.window);
    const auto head = simulate_stickslip(r_m.first(spec.window), warm, spec.rc_true);

    CouplingSeries scored = full;
    scored.first_defined = spec.window;
    const auto tail = simulate_stickslip(r_m, scored, spec.rc_true);

    std::vector<double> r_i(spec.horizon);
    for (std::size_t t = 0; t < spec.window; ++t)
        r_i[t] = head.prediction[t];
    for (std::size_t t = spec.window; t < spec.horizon; ++t)
        r_i[t] = tail.prediction[t];

    std::mt19937_64 engine(mix_seed(spec.seed, 1));
    std::normal_distribution<double> normal(0.0, 1.0);
    for (auto &x : r_i)
    {
        const double z = normal(engine);
        if (spec.obs_noise > 0.0)
            x += spec.obs_noise * z;
    }
    return r_i;
}

PricePanel synth_panel(std::span<const double> r_m, std::span<const double> r_i, std::size_t market_stocks)
{
    if (r_m.size() != r_i.size() || r_m.empty())
        throw InterfaceError("synthetic market and stock series must be non-empty and equally long");
    if (market_stocks == 0)
        throw ConfigError("need at least one market stock");

    const std::size_t T = r_m.size();
    std::vector<Date> dates;
    dates.reserve(T);
    std::chrono::sys_days day{std::chrono::year{2015} / std::chrono::January / 5};
    while (dates.size() < T)
    {
        const std::chrono::weekday wd{day};
        if (wd != std::chrono::Saturday && wd != std::chrono::Sunday)
            dates.emplace_back(std::chrono::year_month_day{day});
        day += std::chrono::days{1};
    }

    std::vector<std::string> tickers;
    std::vector<std::vector<double>> open, close;
    auto add_stock = [&](std::string ticker, double start, std::span<const double> r) {
        std::vector<double> o(T), c(T);
        double price = start;
        for (std::size_t t = 0; t < T; ++t)
        {
            o[t] = price;
            c[t] = price * std::exp(r[t]);
            price = c[t];
        }
        tickers.push_back(std::move(ticker));
        open.push_back(std::move(o));
        close.push_back(std::move(c));
    };

    for (std::size_t j = 0; j < market_stocks; ++j)
        add_stock(market_stocks == 1 ? "MKT" : "MKT" + std::to_string(j + 1), 100.0 * static_cast<double>(j + 1), r_m);
    add_stock("STK", 100.0, r_i);
    return PricePanel(std::move(dates), std::move(tickers), std::move(open), std::move(close));
}

} // namespace stickiness
