#pragma once

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace stickiness
{

/// Calendar trading date, ISO-8601 (YYYY-MM-DD) on the wire.
class Date
{
public:
    Date() = default;
    explicit Date(std::chrono::year_month_day ymd);
    Date(int year, unsigned month, unsigned day);

    /// Throws ValidationError on anything that is not a valid YYYY-MM-DD date.
    static Date parse(std::string_view text);

    std::string to_string() const;
    std::chrono::year_month_day ymd() const noexcept { return ymd_; }

    friend bool operator==(const Date &, const Date &) = default;
    friend auto operator<=>(const Date &a, const Date &b) { return a.ymd_ <=> b.ymd_; }

private:
    std::chrono::year_month_day ymd_{std::chrono::year{1970}, std::chrono::January, std::chrono::day{1}};
};

std::ostream &operator<<(std::ostream &os, const Date &d);

/// Inclusive date interval. Text form is `FIRST:LAST`.
struct DateRange
{
    Date first;
    Date last;

    static DateRange parse(std::string_view text);
    bool contains(const Date &d) const noexcept { return first <= d && d <= last; }
    bool overlaps(const DateRange &other) const noexcept { return !(last < other.first || other.last < first); }
    std::string to_string() const;
};

/**
 * Rectangular panel of daily open/close prices for N stocks over T dates.
 *
 * Immutable once constructed; the constructor enforces that dates are strictly
 * increasing, every stock has both prices on every date and all prices are
 * finite and strictly positive.
 */
class PricePanel
{
public:
    PricePanel(std::vector<Date> dates, std::vector<std::string> tickers,
               std::vector<std::vector<double>> open, std::vector<std::vector<double>> close);

    std::size_t num_stocks() const noexcept { return tickers_.size(); }
    std::size_t num_dates() const noexcept { return dates_.size(); }

    const std::vector<Date> &dates() const noexcept { return dates_; }
    const std::vector<std::string> &tickers() const noexcept { return tickers_; }

    /// Prices of stock `i`, indexed by date.
    const std::vector<double> &open(std::size_t i) const { return open_.at(i); }
    const std::vector<double> &close(std::size_t i) const { return close_.at(i); }

    /// Throws LookupError when the ticker is absent.
    std::size_t index_of(std::string_view ticker) const;

    /// Sub-panel restricted to dates inside `range`. Throws DegenerateInputError if empty.
    PricePanel slice(const DateRange &range) const;

    /// Every price multiplied by `factor` (> 0).
    PricePanel rescaled(double factor) const;

private:
    std::vector<Date> dates_;
    std::vector<std::string> tickers_;
    std::vector<std::vector<double>> open_;
    std::vector<std::vector<double>> close_;
};

/// Open-close log returns, r[i][t] = ln(close/open), same stock order as the source panel.
struct ReturnPanel
{
    std::vector<Date> dates;
    std::vector<std::string> tickers;
    std::vector<std::vector<double>> r;

    std::size_t num_stocks() const noexcept { return tickers.size(); }
    std::size_t num_dates() const noexcept { return dates.size(); }
};

/// Equal-weight return of every stock except `excluded_stock`.
struct ComplementSeries
{
    std::string excluded_stock;
    std::vector<Date> dates;
    std::vector<double> r_m;
};

enum class ComplementConvention
{
    /// ln(mean_j close_j(t) / mean_j open_j(t)), one value per panel date.
    OpenClose,
    /// ln(mean_j close_j(t) / mean_j close_j(t-1)); the first panel date has no value.
    CloseClose,
};

/**
 * Load a panel from either a directory of per-stock CSV files (`date,open,close`,
 * ticker = file stem) or a single wide CSV (`date,TICKER.open,TICKER.close,...`).
 *
 * Stocks are ordered by ticker for directory input and by column order for wide
 * input. Missing or extra dates raise AlignmentError naming the stock and date.
 */
PricePanel load_price_panel(const std::filesystem::path &source);

/// Parse one per-stock CSV body (`date,open,close` with header).
PricePanel parse_stock_csv(std::istream &in, const std::string &ticker);

/// Parse a wide CSV body.
PricePanel parse_wide_csv(std::istream &in);

/// Write the panel as a wide CSV that `load_price_panel` reads back losslessly.
void write_wide_csv(std::ostream &out, const PricePanel &panel);

ReturnPanel open_close_returns(const PricePanel &panel);

/// Leave-one-out equal-weight market return for `excluded`. Throws LookupError
/// for an unknown ticker and DegenerateInputError for panels with fewer than 2 stocks.
ComplementSeries complement_return(const PricePanel &panel, std::string_view excluded,
                                   ComplementConvention convention = ComplementConvention::OpenClose);

/// Equal-weight return of all N stocks (the CAPM market), open-close convention.
std::vector<double> index_return(const PricePanel &panel);

} // namespace stickiness
