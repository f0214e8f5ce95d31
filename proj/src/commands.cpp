#include "stickiness/commands.hpp"

#include "stickiness/errors.hpp"
#include "stickiness/report.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <fstream>
#include <functional>
#include <ostream>
#include <thread>

namespace stickiness
{

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace
{

std::ofstream open_output(const fs::path &path)
{
    if (path.has_parent_path())
        fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write " + path.string());
    return out;
}

void write_manifest(const fs::path &path, const ordered_json &manifest)
{
    auto out = open_output(path);
    out << manifest.dump(2) << '\n';
}

const char *to_string(ComplementConvention c)
{
    return c == ComplementConvention::OpenClose ? "open-close" : "close-close";
}

void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)> &job)
{
    if (threads == 0)
        threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
    if (threads <= 1)
    {
        for (std::size_t k = 0; k < n; ++k)
            job(k);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; ++w)
    {
        pool.emplace_back([&] {
            for (std::size_t k = next++; k < n; k = next++)
                job(k);
        });
    }
}

/// Stock returns and market complement aligned on the same dates.
struct AlignedPair
{
    std::vector<Date> dates;
    std::vector<double> r_i;
    std::vector<double> r_m;
};

AlignedPair aligned_pair(const PricePanel &panel, const ReturnPanel &returns, std::size_t i,
                         ComplementConvention convention)
{
    auto comp = complement_return(panel, panel.tickers()[i], convention);
    AlignedPair p;
    const std::size_t offset = returns.num_dates() - comp.r_m.size();
    p.dates = std::move(comp.dates);
    p.r_m = std::move(comp.r_m);
    p.r_i.assign(returns.r[i].begin() + static_cast<std::ptrdiff_t>(offset), returns.r[i].end());
    return p;
}

} // namespace

// ---------------------------------------------------------------------------

StockEstimate estimate_stock(std::span<const double> r_i, std::span<const double> r_m,
                             const EstimationOptions &options)
{
    StockEstimate est;
    est.coupling = coupling_series(r_i, r_m, options.coupling, options.window);
    est.curve = scan_rc(r_i, r_m, est.coupling, options.grid);

    EnvelopeOptions env;
    env.coupling = options.coupling;
    env.window = options.window;
    env.reshuffle = options.reshuffle;
    env.n_samples = options.samples;
    env.seed = options.seed;
    est.noise = noise_envelope(r_i, r_m, options.grid, env);

    est.decision = classify_stickiness(est.curve, est.noise);
    est.trace = simulate_stickslip(r_m, est.coupling, est.decision.rc_min);
    return est;
}

// ---------------------------------------------------------------------------

int run_returns(const ReturnsConfig &config, std::ostream &err)
{
    try
    {
        const PricePanel panel = load_price_panel(config.input);
        if (panel.num_stocks() < 2)
            throw DegenerateInputError("need at least 2 stocks for complement returns");
        const ReturnPanel returns = open_close_returns(panel);

        std::vector<ComplementSeries> complements;
        for (const auto &t : panel.tickers())
            complements.push_back(complement_return(panel, t, config.convention));

        auto out = open_output(config.out_dir / "returns.tsv");
        write_returns_tsv(out, returns);
        auto cout = open_output(config.out_dir / "complements.tsv");
        write_complements_tsv(cout, complements.front().dates, complements);

        ordered_json manifest;
        manifest["command"] = "returns";
        manifest["input"] = config.input.string();
        manifest["convention"] = to_string(config.convention);
        manifest["stocks"] = panel.num_stocks();
        manifest["dates"] = panel.num_dates();
        write_manifest(config.out_dir / "manifest.json", manifest);
        return 0;
    }
    catch (const std::exception &e)
    {
        err << "returns: " << e.what() << '\n';
        return 1;
    }
}

int run_estimate(const EstimateConfig &config, std::ostream &err)
{
    try
    {
        PricePanel panel = load_price_panel(config.input);
        if (config.period)
            panel = panel.slice(*config.period);
        if (panel.num_stocks() < 2)
            throw DegenerateInputError("need at least 2 stocks to build market complements");

        EstimationOptions options = config.estimation;
        options.grid = default_rc_grid(config.grid_max, config.grid_step);

        const ReturnPanel returns = open_close_returns(panel);
        const std::size_t N = panel.num_stocks();

        struct Outcome
        {
            AlignedPair data;
            std::optional<StockEstimate> estimate;
            std::string failure;
        };
        std::vector<Outcome> outcomes(N);

        parallel_for(N, config.threads, [&](std::size_t i) {
            auto &o = outcomes[i];
            try
            {
                o.data = aligned_pair(panel, returns, i, config.convention);
                o.estimate = estimate_stock(o.data.r_i, o.data.r_m, options);
            }
            catch (const std::exception &e)
            {
                o.failure = e.what();
            }
        });

        std::vector<std::size_t> order(N);
        for (std::size_t i = 0; i < N; ++i)
            order[i] = i;
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return panel.tickers()[a] < panel.tickers()[b]; });

        std::vector<ReportRow> rows;
        ordered_json failures = ordered_json::object();
        std::size_t sticky = 0;
        for (std::size_t i : order)
        {
            const auto &ticker = panel.tickers()[i];
            const auto &o = outcomes[i];
            if (!o.estimate)
            {
                ReportRow row;
                row.ticker = ticker;
                row.failure = o.failure;
                rows.push_back(row);
                failures[ticker] = o.failure;
                err << "estimate: " << ticker << ": " << o.failure << '\n';
                continue;
            }
            const auto &est = *o.estimate;
            rows.push_back(ReportRow::from_decision(ticker, est.decision));
            sticky += est.decision.sticky ? 1 : 0;

            auto curve_out = open_output(config.out_dir / "curves" / (ticker + ".tsv"));
            write_curve_tsv(curve_out, est.curve, est.noise);
            auto trace_out = open_output(config.out_dir / "traces" / (ticker + ".tsv"));
            write_trace_tsv(trace_out, o.data.dates, o.data.r_m, est.coupling, est.trace);
        }

        auto report = open_output(config.out_dir / "report.tsv");
        write_report_tsv(report, rows);

        ordered_json manifest;
        manifest["command"] = "estimate";
        manifest["input"] = config.input.string();
        manifest["period"] = config.period ? config.period->to_string() : std::string("all");
        manifest["first_date"] = panel.dates().front().to_string();
        manifest["last_date"] = panel.dates().back().to_string();
        manifest["stocks"] = N;
        manifest["window"] = options.window;
        manifest["coupling"] = to_string(options.coupling);
        manifest["convention"] = to_string(config.convention);
        manifest["grid_max"] = config.grid_max;
        manifest["grid_step"] = config.grid_step;
        manifest["grid_points"] = options.grid.size();
        manifest["samples"] = options.samples;
        manifest["seed"] = options.seed;
        manifest["reshuffle"] = to_string(options.reshuffle);
        manifest["percentiles"] = {10, 90};
        manifest["kurtosis"] = "raw";
        manifest["sticky_count"] = sticky;
        manifest["failures"] = failures;
        write_manifest(config.out_dir / "manifest.json", manifest);
        return 0;
    }
    catch (const std::exception &e)
    {
        err << "estimate: " << e.what() << '\n';
        return 1;
    }
}

int run_synth(const SynthConfig &config, std::ostream &err)
{
    try
    {
        config.spec.validate();
        const auto r_m = generate_market(config.spec);
        const auto r_i = plant_sticky_stock(r_m, config.spec);
        const PricePanel panel = synth_panel(r_m, r_i, config.market_stocks);

        auto out = open_output(config.output);
        write_wide_csv(out, panel);

        ordered_json manifest;
        manifest["command"] = "synth";
        manifest["horizon"] = config.spec.horizon;
        manifest["market_vol"] = config.spec.market_vol;
        manifest["coupling"] = config.spec.coupling;
        manifest["window"] = config.spec.window;
        manifest["rc_true"] = config.spec.rc_true;
        manifest["obs_noise"] = config.spec.obs_noise;
        manifest["seed"] = config.spec.seed;
        manifest["market_stocks"] = config.market_stocks;
        write_manifest(fs::path(config.output.string() + ".manifest.json"), manifest);
        return 0;
    }
    catch (const std::exception &e)
    {
        err << "synth: " << e.what() << '\n';
        return 1;
    }
}

int run_compare(const CompareConfig &config, std::ostream &err)
{
    try
    {
        if (config.in_sample.overlaps(config.out_sample))
            throw ConfigError("in-sample and out-of-sample ranges overlap");

        const PricePanel panel = load_price_panel(config.input);
        if (panel.num_stocks() < 2)
            throw DegenerateInputError("need at least 2 stocks");

        std::vector<std::string> models = config.models;
        if (models.empty())
        {
            models = {"capm"};
            if (config.caps)
                models.push_back("cap");
            models.push_back("yardstick");
        }
        for (const auto &m : models)
        {
            if (m != "capm" && m != "cap" && m != "yardstick" && m != "zero")
                throw ConfigError("unknown model '" + m + "'");
            if (m == "cap" && !config.caps)
                throw ConfigError("model 'cap' needs --caps");
        }

        std::vector<std::size_t> in_idx, out_idx;
        for (std::size_t t = 0; t < panel.num_dates(); ++t)
        {
            if (config.in_sample.contains(panel.dates()[t]))
                in_idx.push_back(t);
            if (config.out_sample.contains(panel.dates()[t]))
                out_idx.push_back(t);
        }
        if (in_idx.size() < 2)
            throw ConfigError("in-sample range holds fewer than 2 panel dates");
        if (out_idx.empty())
            throw ConfigError("out-of-sample range holds no panel dates");

        const std::size_t N = panel.num_stocks();
        const ReturnPanel returns = open_close_returns(panel);
        const std::vector<double> market = index_return(panel);
        std::vector<std::vector<double>> complement(N);
        for (std::size_t i = 0; i < N; ++i)
            complement[i] = complement_return(panel, panel.tickers()[i]).r_m;

        auto pick = [](const std::vector<double> &x, const std::vector<std::size_t> &idx) {
            std::vector<double> out;
            out.reserve(idx.size());
            for (auto t : idx)
                out.push_back(x[t]);
            return out;
        };

        std::optional<CapWeightParams> cap_params;
        if (std::find(models.begin(), models.end(), "cap") != models.end())
        {
            const auto caps = align_capitalizations(load_capitalizations(*config.caps), panel.tickers());
            CapModelOptions opts;
            opts.smoothing_window = config.smoothing_window;
            cap_params = fit_cap_model(panel, caps, config.in_sample, opts);
        }

        std::vector<MomentsRow> pooled_rows, stock_rows;
        auto scatter = open_output(config.out_dir / "scatter.tsv");
        scatter << "model\tstock\tdate\tactual\tpredicted\n";

        for (const auto &model : models)
        {
            std::vector<double> pooled_pred, pooled_actual;
            for (std::size_t i = 0; i < N; ++i)
            {
                const auto actual = pick(returns.r[i], out_idx);
                std::vector<double> pred;
                if (model == "capm")
                {
                    const auto fit = capm_beta(pick(returns.r[i], in_idx), pick(market, in_idx));
                    pred = capm_predict(fit, pick(market, out_idx));
                }
                else if (model == "cap")
                {
                    pred = cap_model_predict(*cap_params, i, pick(complement[i], out_idx));
                }
                else if (model == "yardstick")
                {
                    const auto g = coupling_series(returns.r[i], complement[i], CouplingMode::VolRatio, config.window);
                    if (out_idx.front() < g.first_defined)
                        throw ConfigError("out-of-sample range starts inside the coupling warm-up");
                    pred = pick(yardstick_predict(g, complement[i]), out_idx);
                }
                else
                {
                    pred.assign(actual.size(), 0.0);
                }

                for (std::size_t k = 0; k < out_idx.size(); ++k)
                {
                    scatter << model << '\t' << panel.tickers()[i] << '\t' << panel.dates()[out_idx[k]].to_string()
                            << '\t' << format_sig(actual[k], 17) << '\t' << format_sig(pred[k], 17) << '\n';
                }
                if (actual.size() >= 4)
                    stock_rows.push_back({model, panel.tickers()[i], forecast_moments(pred, actual)});
                pooled_pred.insert(pooled_pred.end(), pred.begin(), pred.end());
                pooled_actual.insert(pooled_actual.end(), actual.begin(), actual.end());
            }
            pooled_rows.push_back({model, "ALL", forecast_moments(pooled_pred, pooled_actual)});
        }

        auto moments = open_output(config.out_dir / "moments.tsv");
        write_moments_tsv(moments, pooled_rows);
        auto by_stock = open_output(config.out_dir / "moments_by_stock.tsv");
        write_moments_tsv(by_stock, stock_rows);

        ordered_json manifest;
        manifest["command"] = "compare";
        manifest["input"] = config.input.string();
        manifest["caps"] = config.caps ? config.caps->string() : std::string();
        manifest["in_sample"] = config.in_sample.to_string();
        manifest["out_sample"] = config.out_sample.to_string();
        manifest["in_sample_days"] = in_idx.size();
        manifest["out_sample_days"] = out_idx.size();
        manifest["window"] = config.window;
        manifest["smoothing_window"] = config.smoothing_window;
        manifest["models"] = models;
        manifest["capm_market"] = "equal-weight index of all stocks, open-close";
        manifest["kurtosis"] = "raw";
        if (cap_params)
            manifest["delta"] = cap_params->delta;
        write_manifest(config.out_dir / "manifest.json", manifest);
        return 0;
    }
    catch (const std::exception &e)
    {
        err << "compare: " << e.what() << '\n';
        return 1;
    }
}

} // namespace stickiness
