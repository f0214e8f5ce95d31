#include "stickiness/report.hpp"

#include "stickiness/errors.hpp"

#include <cstdio>
#include <ostream>

namespace stickiness
{

std::string format_sig(double value, int digits)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, value);
    return buf;
}

std::string format_fixed(double value, int decimals)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
    return buf;
}

void write_returns_tsv(std::ostream &out, const ReturnPanel &returns)
{
    out << "date";
    for (const auto &t : returns.tickers)
        out << '\t' << t;
    out << '\n';
    for (std::size_t t = 0; t < returns.num_dates(); ++t)
    {
        out << returns.dates[t].to_string();
        for (std::size_t i = 0; i < returns.num_stocks(); ++i)
            out << '\t' << format_sig(returns.r[i][t]);
        out << '\n';
    }
}

void write_complements_tsv(std::ostream &out, const std::vector<Date> &dates,
                           const std::vector<ComplementSeries> &complements)
{
    out << "date";
    for (const auto &c : complements)
    {
        if (c.r_m.size() != dates.size())
            throw InterfaceError("complement series " + c.excluded_stock + " does not match the date column");
        out << '\t' << c.excluded_stock;
    }
    out << '\n';
    for (std::size_t t = 0; t < dates.size(); ++t)
    {
        out << dates[t].to_string();
        for (const auto &c : complements)
            out << '\t' << format_sig(c.r_m[t]);
        out << '\n';
    }
}

void write_trace_tsv(std::ostream &out, const std::vector<Date> &dates, std::span<const double> r_m,
                     const CouplingSeries &g, const StickSlipTrace &trace)
{
    if (dates.size() != trace.size() || r_m.size() != trace.size() || g.size() != trace.size())
        throw InterfaceError("trace dump inputs differ in length");
    out << "date\tr_m\tg\tstress\tslipped\tprediction\n";
    for (std::size_t t = trace.start; t < trace.size(); ++t)
    {
        out << dates[t].to_string() << '\t' << format_sig(r_m[t], 17) << '\t' << format_sig(g.g[t], 17) << '\t'
            << format_sig(trace.stress[t], 17) << '\t' << (trace.slipped[t] ? 1 : 0) << '\t'
            << format_sig(trace.prediction[t], 17) << '\n';
    }
}

void write_curve_tsv(std::ostream &out, const ErrorCurve &curve, const NoiseEnvelope &noise)
{
    if (noise.grid != curve.grid)
        throw InterfaceError("curve and noise envelope grids differ");
    out << "rc\terror\tnoise_p10\tnoise_p90\n";
    for (std::size_t k = 0; k < curve.grid.size(); ++k)
    {
        out << format_sig(curve.grid[k], 17) << '\t' << format_sig(curve.error[k], 17) << '\t'
            << format_sig(noise.p10[k], 17) << '\t' << format_sig(noise.p90[k], 17) << '\n';
    }
}

ReportRow ReportRow::from_decision(std::string ticker, const StickinessDecision &d)
{
    ReportRow row;
    row.ticker = std::move(ticker);
    row.e_zero = d.e_zero;
    row.noise_level = d.noise10_at_min;
    row.e_min = d.e_min;
    if (d.sticky)
        row.rc = d.rc_min;
    return row;
}

void write_report_tsv(std::ostream &out, const std::vector<ReportRow> &rows)
{
    out << "Stock\tValue for Rc=0\tNoise level\tMin error\tRc\n";
    for (const auto &row : rows)
    {
        out << row.ticker << '\t';
        if (row.failure)
        {
            out << "NA\tNA\tNA\t-\n";
            continue;
        }
        out << format_fixed(row.e_zero, 4) << '\t' << format_fixed(row.noise_level, 4) << '\t'
            << format_fixed(row.e_min, 4) << '\t' << (row.rc ? format_fixed(*row.rc, 5) : std::string("-")) << '\n';
    }
}

void write_moments_tsv(std::ostream &out, const std::vector<MomentsRow> &rows)
{
    auto opt = [](const std::optional<double> &v) { return v ? format_sig(*v) : std::string("NA"); };
    out << "model\tstock\tn\tmean\tstdev\tskewness\tkurtosis_raw\n";
    for (const auto &r : rows)
    {
        out << r.model << '\t' << r.stock << '\t' << r.moments.n << '\t' << format_sig(r.moments.mean) << '\t'
            << format_sig(r.moments.stdev) << '\t' << opt(r.moments.skewness) << '\t' << opt(r.moments.kurtosis)
            << '\n';
    }
}

} // namespace stickiness
