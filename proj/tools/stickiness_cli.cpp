// Command-line front end: returns, estimate, synth, compare.

#include "stickiness/commands.hpp"
#include "stickiness/errors.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace stickiness;

namespace
{

std::optional<DateRange> parse_optional_range(const std::string &text)
{
    if (text.empty())
        return std::nullopt;
    return DateRange::parse(text);
}

ComplementConvention parse_convention(const std::string &text)
{
    if (text == "open-close")
        return ComplementConvention::OpenClose;
    if (text == "close-close")
        return ComplementConvention::CloseClose;
    throw ConfigError("unknown complement convention '" + text + "'");
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Stick-slip stickiness estimation for stock returns"};
    app.require_subcommand(1);

    // returns
    ReturnsConfig returns_cfg;
    std::string returns_convention = "open-close";
    auto *returns = app.add_subcommand("returns", "Write open-close returns and market complements as TSV");
    returns->add_option("--input", returns_cfg.input, "Wide CSV or directory of per-stock CSVs")->required();
    returns->add_option("--out-dir", returns_cfg.out_dir, "Output directory")->required();
    returns->add_option("--complement", returns_convention, "open-close | close-close")
        ->check(CLI::IsMember({"open-close", "close-close"}));

    // estimate
    EstimateConfig est_cfg;
    std::string est_period, est_coupling = "vol-ratio", est_reshuffle = "joint", est_convention = "open-close";
    auto *estimate = app.add_subcommand("estimate", "Estimate per-stock stickiness with bootstrap significance");
    estimate->add_option("--input", est_cfg.input, "Wide CSV or directory of per-stock CSVs")->required();
    estimate->add_option("--out-dir", est_cfg.out_dir, "Output directory")->required();
    estimate->add_option("--period", est_period, "Estimation period FIRST:LAST (ISO dates)");
    estimate->add_option("--window", est_cfg.estimation.window, "Coupling window in days")
        ->capture_default_str()
        ->check(CLI::Range(2, 100000));
    estimate->add_option("--grid-max", est_cfg.grid_max, "Largest threshold on the grid")->capture_default_str();
    estimate->add_option("--grid-step", est_cfg.grid_step, "Threshold grid step")->capture_default_str();
    estimate->add_option("--samples", est_cfg.estimation.samples, "Reshuffled samples")->capture_default_str();
    estimate->add_option("--seed", est_cfg.estimation.seed, "Bootstrap seed")->capture_default_str();
    estimate->add_option("--coupling", est_coupling, "vol-ratio | beta")
        ->check(CLI::IsMember({"vol-ratio", "beta"}))
        ->capture_default_str();
    estimate->add_option("--reshuffle", est_reshuffle, "joint | independent")
        ->check(CLI::IsMember({"joint", "independent"}))
        ->capture_default_str();
    estimate->add_option("--complement", est_convention, "open-close | close-close")
        ->check(CLI::IsMember({"open-close", "close-close"}));
    estimate->add_option("--threads", est_cfg.threads, "Worker threads (0 = all cores)");

    // synth
    SynthConfig synth_cfg;
    auto *synth = app.add_subcommand("synth", "Write a synthetic panel with a planted stickiness");
    synth->add_option("--output", synth_cfg.output, "Output wide CSV")->required();
    synth->add_option("--horizon", synth_cfg.spec.horizon, "Number of days")->capture_default_str();
    synth->add_option("--market-vol", synth_cfg.spec.market_vol, "Daily market return stdev")->capture_default_str();
    synth->add_option("--coupling", synth_cfg.spec.coupling, "Constant coupling g")->capture_default_str();
    synth->add_option("--window", synth_cfg.spec.window, "Coupling warm-up window")->capture_default_str();
    synth->add_option("--rc-true", synth_cfg.spec.rc_true, "Planted threshold")->capture_default_str();
    synth->add_option("--obs-noise", synth_cfg.spec.obs_noise, "Observation noise stdev")->capture_default_str();
    synth->add_option("--seed", synth_cfg.spec.seed, "Generator seed")->capture_default_str();
    synth->add_option("--market-stocks", synth_cfg.market_stocks, "Number of market stocks")->capture_default_str();

    // compare
    CompareConfig cmp_cfg;
    std::string cmp_caps, cmp_in, cmp_out, cmp_models;
    auto *compare = app.add_subcommand("compare", "Out-of-sample error moments of the linear models");
    compare->add_option("--input", cmp_cfg.input, "Wide CSV or directory of per-stock CSVs")->required();
    compare->add_option("--caps", cmp_caps, "CSV ticker,capitalization (enables the cap model)");
    compare->add_option("--in-sample", cmp_in, "In-sample range FIRST:LAST")->required();
    compare->add_option("--out-sample", cmp_out, "Out-of-sample range FIRST:LAST")->required();
    compare->add_option("--window", cmp_cfg.window, "Yard-stick coupling window")->capture_default_str();
    compare->add_option("--smoothing-window", cmp_cfg.smoothing_window, "Cap-model gamma window")
        ->capture_default_str();
    compare->add_option("--models", cmp_models, "Comma list of capm,cap,yardstick,zero");
    compare->add_option("--out-dir", cmp_cfg.out_dir, "Output directory")->required();

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (*returns)
        {
            returns_cfg.convention = parse_convention(returns_convention);
            return run_returns(returns_cfg, std::cerr);
        }
        if (*estimate)
        {
            est_cfg.period = parse_optional_range(est_period);
            est_cfg.estimation.coupling = parse_coupling_mode(est_coupling);
            est_cfg.estimation.reshuffle = parse_reshuffle_mode(est_reshuffle);
            est_cfg.convention = parse_convention(est_convention);
            return run_estimate(est_cfg, std::cerr);
        }
        if (*synth)
            return run_synth(synth_cfg, std::cerr);
        if (*compare)
        {
            if (!cmp_caps.empty())
                cmp_cfg.caps = cmp_caps;
            cmp_cfg.in_sample = DateRange::parse(cmp_in);
            cmp_cfg.out_sample = DateRange::parse(cmp_out);
            for (const auto &m : CLI::detail::split(cmp_models, ','))
                if (!m.empty())
                    cmp_cfg.models.push_back(m);
            return run_compare(cmp_cfg, std::cerr);
        }
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
