// Acceptance suite. Prints one PASS/FAIL/SKIP line per criterion and exits
// non-zero if any criterion fails.

#include "oracles.hpp"

#include "stickiness/bootstrap.hpp"
#include "stickiness/commands.hpp"
#include "stickiness/estimator.hpp"
#include "stickiness/linear_models.hpp"
#include "stickiness/stickslip.hpp"
#include "stickiness/synth.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace stickiness;

namespace
{

struct Outcome
{
    enum Status
    {
        Pass,
        Fail,
        Skip
    } status;
    std::string detail;
};

Outcome verdict(bool ok, std::string detail)
{
    return {ok ? Outcome::Pass : Outcome::Fail, std::move(detail)};
}

std::string fixed(double v, int digits = 4)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

/// Synthetic stock/market pair with the vol-ratio coupling estimated from the data.
struct Sample
{
    std::vector<double> r_m, r_i;
};

Sample synth_sample(double rc_true, double obs_noise, std::uint64_t seed)
{
    SynthSpec spec;
    spec.horizon = 500;
    spec.rc_true = rc_true;
    spec.obs_noise = obs_noise;
    spec.seed = seed;
    Sample s;
    s.r_m = generate_market(spec);
    s.r_i = plant_sticky_stock(s.r_m, spec);
    return s;
}

bool classify(const Sample &s, std::size_t samples, std::uint64_t seed)
{
    EstimationOptions opt;
    opt.samples = samples;
    opt.seed = seed;
    return estimate_stock(s.r_i, s.r_m, opt).decision.sticky;
}

// ---------------------------------------------------------------------------

Outcome zero_threshold_equivalence()
{
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    for (std::uint64_t k = 0; k < 100; ++k)
    {
        const auto rm = oracle::random_series(500, 0.01, 10'000 + k);
        const auto ri = oracle::random_series(500, 0.015, 20'000 + k);
        const auto g = coupling_series(ri, rm, CouplingMode::VolRatio, 20);
        const auto tr = simulate_stickslip(rm, g, 0.0);
        const auto ys = yardstick_predict(g, rm);
        for (std::size_t t = g.first_defined; t < rm.size(); ++t)
            worst = std::max(worst, std::fabs(tr.prediction[t] - ys[t]));
    }
    const double secs = seconds_since(t0);
    std::ostringstream d;
    d << "max abs diff " << worst << ", " << fixed(secs, 3) << " s";
    return verdict(worst <= 1e-12 && secs < 1.0, d.str());
}

Outcome hand_trace()
{
    const std::vector<double> rm{0.03, 0.03, 0.03};
    const auto tr = simulate_stickslip(rm, CouplingSeries::constant(3, 1.0, 0), 0.05);
    const bool ok = tr.prediction == std::vector<double>{0.0, 0.06, 0.0} &&
                    tr.stress == std::vector<double>{0.03, 0.06, 0.03};
    std::ostringstream d;
    d << "predictions [" << tr.prediction[0] << ", " << tr.prediction[1] << ", " << tr.prediction[2] << "], stresses ["
      << tr.stress[0] << ", " << tr.stress[1] << ", " << tr.stress[2] << "]";
    return verdict(ok, d.str());
}

Outcome planted_recovery()
{
    const auto t0 = std::chrono::steady_clock::now();
    const auto grid = default_rc_grid();
    bool ok = true;
    std::ostringstream d;
    for (double rc_true : {0.002, 0.005, 0.01})
    {
        int hits = 0;
        for (std::uint64_t seed = 0; seed < 50; ++seed)
        {
            SynthSpec spec;
            spec.horizon = 500;
            spec.rc_true = rc_true;
            spec.seed = seed;
            const auto rm = generate_market(spec);
            const auto ri = plant_sticky_stock(rm, spec);
            auto g = true_coupling(spec);
            g.first_defined = spec.window;
            const auto m = find_rc_min(scan_rc(ri, rm, g, grid));
            if (std::fabs(m.rc - rc_true) <= 1e-4 + 1e-12)
                ++hits;
        }
        ok = ok && hits >= 45;
        d << "rc=" << rc_true << ": " << hits << "/50; ";
    }
    const double secs = seconds_since(t0);
    d << fixed(secs, 2) << " s";
    return verdict(ok && secs < 30.0, d.str());
}

Outcome null_false_positives()
{
    const auto t0 = std::chrono::steady_clock::now();
    int sticky = 0;
    for (std::uint64_t trial = 0; trial < 100; ++trial)
        if (classify(synth_sample(0.0, 0.01, 50'000 + trial), 100, trial + 1))
            ++sticky;
    const double secs = seconds_since(t0);
    std::ostringstream d;
    d << sticky << "/100 sticky, " << fixed(secs, 1) << " s";
    return verdict(sticky >= 2 && sticky <= 20 && secs < 600.0, d.str());
}

Outcome overshoot()
{
    const auto grid = std::vector<double>{0.0, 0.05};
    int hits = 0;
    for (std::uint64_t seed = 0; seed < 50; ++seed)
    {
        const auto s = synth_sample(0.0, 0.01, 60'000 + seed);
        const auto g = coupling_series(s.r_i, s.r_m, CouplingMode::VolRatio, 20);
        const auto curve = scan_rc(s.r_i, s.r_m, g, grid);
        if (curve.error[1] > curve.error[0])
            ++hits;
    }
    return verdict(hits >= 48, std::to_string(hits) + "/50 with e(0.05) > e(0)");
}

Outcome bootstrap_determinism()
{
    const auto grid = default_rc_grid();
    bool identical = true, ordered = true;
    int agree = 0;
    for (std::uint64_t trial = 0; trial < 20; ++trial)
    {
        // Alternate planted and null data so both outcomes are exercised.
        const auto s = trial % 2 == 0 ? synth_sample(0.005, 0.002, 70'000 + trial)
                                      : synth_sample(0.0, 0.01, 70'000 + trial);
        EnvelopeOptions opt;
        opt.seed = trial + 1;
        opt.n_samples = 100;
        const auto a = noise_envelope(s.r_i, s.r_m, grid, opt);
        const auto b = noise_envelope(s.r_i, s.r_m, grid, opt);
        identical = identical && a.p10 == b.p10 && a.p90 == b.p90;
        opt.n_samples = 1000;
        const auto big = noise_envelope(s.r_i, s.r_m, grid, opt);
        for (const auto *env : {&a, &big})
            for (std::size_t k = 0; k < grid.size(); ++k)
                ordered = ordered && env->p10[k] <= env->p90[k];

        const auto g = coupling_series(s.r_i, s.r_m, CouplingMode::VolRatio, 20);
        const auto curve = scan_rc(s.r_i, s.r_m, g, grid);
        if (classify_stickiness(curve, a).sticky == classify_stickiness(curve, big).sticky)
            ++agree;
    }
    std::ostringstream d;
    d << "bitwise identical: " << (identical ? "yes" : "no") << ", p10<=p90: " << (ordered ? "yes" : "no")
      << ", 100 vs 1000 samples agree " << agree << "/20";
    return verdict(identical && ordered && agree >= 19, d.str());
}

Outcome linear_model_oracles()
{
    double beta_err = 0.0, coupling_err = 0.0, moments_err = 0.0;
    for (std::uint64_t k = 0; k < 100; ++k)
    {
        const auto x = oracle::random_series(250, 0.01, 80'000 + k);
        auto y = oracle::random_series(250, 0.01, 90'000 + k);
        for (std::size_t t = 0; t < y.size(); ++t)
            y[t] += 0.8 * x[t];

        beta_err = std::max(beta_err, oracle::rel_diff(capm_beta(y, x).beta, oracle::beta(y, x)));

        const auto mode = k % 2 == 0 ? CouplingMode::VolRatio : CouplingMode::CovarianceBeta;
        const auto g = coupling_series(y, x, mode, 20);
        for (std::size_t t = 20; t < y.size(); ++t)
        {
            const double ref = mode == CouplingMode::VolRatio ? oracle::vol_ratio_at(y, x, t, 20)
                                                              : oracle::beta_at(y, x, t, 20);
            coupling_err = std::max(coupling_err, oracle::rel_diff(g.g[t], ref));
        }

        const auto m = forecast_moments(x, y);
        const auto ref = oracle::moments(x, y);
        moments_err = std::max({moments_err, oracle::rel_diff(m.mean, ref.mean), oracle::rel_diff(m.stdev, ref.stdev),
                                oracle::rel_diff(*m.skewness, *ref.skew), oracle::rel_diff(*m.kurtosis, *ref.kurt)});
    }
    const double alpha_err = std::fabs(cap_alpha(7.5, 7.5, 1.0) - (1.0 - std::exp(-1.0)));
    std::ostringstream d;
    d << "beta " << beta_err << ", coupling " << coupling_err << ", moments " << moments_err << ", cap_alpha "
      << alpha_err;
    return verdict(beta_err <= 1e-12 && coupling_err <= 1e-12 && moments_err <= 1e-9 && alpha_err <= 1e-15, d.str());
}

Outcome dow_table()
{
    const char *dir = std::getenv("STICKINESS_DOW_DATA");
    if (dir == nullptr || *dir == '\0')
        return {Outcome::Skip, "set STICKINESS_DOW_DATA to a Dow 30 open/close panel to run"};

    EstimateConfig cfg;
    cfg.input = dir;
    cfg.out_dir = std::filesystem::temp_directory_path() / "stickiness_acceptance_dow";
    cfg.period = DateRange::parse("2015-03-23:2016-04-19");
    std::ostringstream err;
    if (run_estimate(cfg, err) != 0)
        return {Outcome::Fail, "estimate failed: " + err.str()};

    std::ifstream in(cfg.out_dir / "report.tsv");
    std::string line;
    std::getline(in, line);
    int rows = 0, in_range = 0, sticky = 0;
    std::string ba = "missing";
    bool ba_ok = false;
    while (std::getline(in, line))
    {
        ++rows;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, '\t'))
            cells.push_back(cell);
        if (cells.size() != 5 || cells[4] == "-")
        {
            if (!cells.empty() && cells[0] == "BA")
                ba = "not sticky";
            continue;
        }
        const double rc = std::stod(cells[4]);
        ++sticky;
        if (rc >= 0.0015 && rc <= 0.0097)
            ++in_range;
        if (cells[0] == "BA")
        {
            ba = cells[4];
            ba_ok = std::fabs(rc - 0.0052) <= 0.2 * 0.0052;
        }
    }
    std::ostringstream d;
    d << rows << " rows, " << in_range << "/" << sticky << " sticky values in [0.0015, 0.0097], BA rc " << ba;
    return verdict(rows == 30 && in_range == sticky && ba_ok, d.str());
}

} // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"zero-threshold equivalence", zero_threshold_equivalence},
        {"hand-trace conformance", hand_trace},
        {"planted-parameter recovery", planted_recovery},
        {"null false-positive control", null_false_positives},
        {"overshoot property", overshoot},
        {"bootstrap determinism and sanity", bootstrap_determinism},
        {"linear-model oracles", linear_model_oracles},
        {"Dow 30 table (data-conditional)", dow_table},
    };

    int failures = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k)
    {
        Outcome o;
        try
        {
            o = criteria[k].second();
        }
        catch (const std::exception &e)
        {
            o = {Outcome::Fail, std::string("exception: ") + e.what()};
        }
        const char *tag = o.status == Outcome::Pass ? "PASS" : o.status == Outcome::Fail ? "FAIL" : "SKIP";
        if (o.status == Outcome::Fail)
            ++failures;
        std::cout << tag << "  [" << (k + 1) << "] " << criteria[k].first << ": " << o.detail << std::endl;
    }
    return failures == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
