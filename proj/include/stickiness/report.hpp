#pragma once

#include "stickiness/bootstrap.hpp"
#include "stickiness/estimator.hpp"
#include "stickiness/linear_models.hpp"
#include "stickiness/market_data.hpp"
#include "stickiness/stickslip.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace stickiness
{

/// printf-style "%.<digits>g".
std::string format_sig(double value, int digits = 10);

/// printf-style "%.<decimals>f".
std::string format_fixed(double value, int decimals);

/// `date` column then one column per ticker, values with 10 significant digits.
void write_returns_tsv(std::ostream &out, const ReturnPanel &returns);

/// Same layout; column `T` holds the complement series that excludes `T`.
void write_complements_tsv(std::ostream &out, const std::vector<Date> &dates,
                           const std::vector<ComplementSeries> &complements);

/// date, r_m, g, stress, slipped, prediction for every simulated step.
void write_trace_tsv(std::ostream &out, const std::vector<Date> &dates, std::span<const double> r_m,
                     const CouplingSeries &g, const StickSlipTrace &trace);

/// rc, error, noise_p10, noise_p90 per grid point.
void write_curve_tsv(std::ostream &out, const ErrorCurve &curve, const NoiseEnvelope &noise);

/// One line of the stickiness table.
struct ReportRow
{
    std::string ticker;
    double e_zero = 0.0;
    double noise_level = 0.0;
    double e_min = 0.0;
    /// Set only for sticky stocks.
    std::optional<double> rc;
    /// Set when the stock could not be estimated; numeric columns print NA.
    std::optional<std::string> failure;

    static ReportRow from_decision(std::string ticker, const StickinessDecision &d);
};

/// Columns: Stock, Value for Rc=0, Noise level, Min error, Rc. Errors to 4
/// decimals, Rc to 5, non-sticky Rc as "-".
void write_report_tsv(std::ostream &out, const std::vector<ReportRow> &rows);

struct MomentsRow
{
    std::string model;
    std::string stock;
    ErrorMoments moments;
};

/// Columns: model, stock, n, mean, stdev, skewness, kurtosis_raw. Undefined moments print NA.
void write_moments_tsv(std::ostream &out, const std::vector<MomentsRow> &rows);

} // namespace stickiness
