#include "stickiness/market_data.hpp"

#include "stickiness/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

namespace stickiness
{

namespace
{

std::string_view trim(std::string_view s)
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split_csv(std::string_view line)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true)
    {
        const auto pos = line.find(',', start);
        if (pos == std::string_view::npos)
        {
            out.push_back(trim(line.substr(start)));
            break;
        }
        out.push_back(trim(line.substr(start, pos - start)));
        start = pos + 1;
    }
    return out;
}

double parse_price(std::string_view text, const std::string &what)
{
    double value = 0.0;
    const auto *end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end)
        throw ValidationError("cannot parse number '" + std::string(text) + "' for " + what);
    return value;
}

bool is_blank(std::string_view line) { return trim(line).empty(); }

int parse_int(std::string_view s)
{
    int v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        return -1;
    return v;
}

double mean_of(const std::vector<std::vector<double>> &rows, std::size_t skip, std::size_t t)
{
    double sum = 0.0;
    std::size_t n = 0;
    for (std::size_t j = 0; j < rows.size(); ++j)
    {
        if (j == skip)
            continue;
        sum += rows[j][t];
        ++n;
    }
    return sum / static_cast<double>(n);
}

} // namespace

// ---------------------------------------------------------------------------
// Date

Date::Date(std::chrono::year_month_day ymd) : ymd_(ymd)
{
    if (!ymd_.ok())
        throw ValidationError("invalid calendar date");
}

Date::Date(int year, unsigned month, unsigned day)
    : Date(std::chrono::year_month_day{std::chrono::year{year}, std::chrono::month{month}, std::chrono::day{day}})
{
}

Date Date::parse(std::string_view text)
{
    text = trim(text);
    if (text.size() != 10 || text[4] != '-' || text[7] != '-')
        throw ValidationError("expected YYYY-MM-DD date, got '" + std::string(text) + "'");
    const int y = parse_int(text.substr(0, 4));
    const int m = parse_int(text.substr(5, 2));
    const int d = parse_int(text.substr(8, 2));
    const std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{static_cast<unsigned>(m)},
                                          std::chrono::day{static_cast<unsigned>(d)}};
    if (y < 0 || m < 1 || d < 1 || !ymd.ok())
        throw ValidationError("invalid date '" + std::string(text) + "'");
    return Date(ymd);
}

std::string Date::to_string() const
{
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd_.year()),
                  static_cast<unsigned>(ymd_.month()), static_cast<unsigned>(ymd_.day()));
    return buf;
}

std::ostream &operator<<(std::ostream &os, const Date &d) { return os << d.to_string(); }

DateRange DateRange::parse(std::string_view text)
{
    const auto colon = text.find(':');
    if (colon == std::string_view::npos)
        throw ValidationError("expected date range FIRST:LAST, got '" + std::string(text) + "'");
    DateRange r{Date::parse(text.substr(0, colon)), Date::parse(text.substr(colon + 1))};
    if (r.last < r.first)
        throw ValidationError("date range '" + std::string(text) + "' ends before it starts");
    return r;
}

std::string DateRange::to_string() const { return first.to_string() + ":" + last.to_string(); }

// ---------------------------------------------------------------------------
// PricePanel

PricePanel::PricePanel(std::vector<Date> dates, std::vector<std::string> tickers,
                       std::vector<std::vector<double>> open, std::vector<std::vector<double>> close)
    : dates_(std::move(dates)), tickers_(std::move(tickers)), open_(std::move(open)), close_(std::move(close))
{
    if (tickers_.empty())
        throw ValidationError("price panel has no stocks");
    if (dates_.empty())
        throw ValidationError("price panel has no dates");
    if (open_.size() != tickers_.size() || close_.size() != tickers_.size())
        throw ValidationError("price rows do not match the ticker list");

    for (std::size_t t = 1; t < dates_.size(); ++t)
    {
        if (!(dates_[t - 1] < dates_[t]))
            throw ValidationError("dates not strictly increasing at " + dates_[t].to_string());
    }

    std::vector<std::string> sorted = tickers_;
    std::sort(sorted.begin(), sorted.end());
    if (auto dup = std::adjacent_find(sorted.begin(), sorted.end()); dup != sorted.end())
        throw ValidationError("duplicate ticker " + *dup);

    for (std::size_t i = 0; i < tickers_.size(); ++i)
    {
        if (open_[i].size() != dates_.size() || close_[i].size() != dates_.size())
            throw ValidationError("stock " + tickers_[i] + " does not cover every date");
        for (std::size_t t = 0; t < dates_.size(); ++t)
        {
            const double o = open_[i][t];
            const double c = close_[i][t];
            if (!(std::isfinite(o) && o > 0.0) || !(std::isfinite(c) && c > 0.0))
                throw ValidationError("non-positive or non-finite price for " + tickers_[i] + " on " +
                                      dates_[t].to_string());
        }
    }
}

std::size_t PricePanel::index_of(std::string_view ticker) const
{
    const auto it = std::find(tickers_.begin(), tickers_.end(), ticker);
    if (it == tickers_.end())
        throw LookupError("ticker not in panel: " + std::string(ticker));
    return static_cast<std::size_t>(it - tickers_.begin());
}

PricePanel PricePanel::slice(const DateRange &range) const
{
    std::vector<Date> dates;
    std::vector<std::vector<double>> open(num_stocks()), close(num_stocks());
    for (std::size_t t = 0; t < dates_.size(); ++t)
    {
        if (!range.contains(dates_[t]))
            continue;
        dates.push_back(dates_[t]);
        for (std::size_t i = 0; i < num_stocks(); ++i)
        {
            open[i].push_back(open_[i][t]);
            close[i].push_back(close_[i][t]);
        }
    }
    if (dates.empty())
        throw DegenerateInputError("no panel dates inside " + range.to_string());
    return PricePanel(std::move(dates), tickers_, std::move(open), std::move(close));
}

PricePanel PricePanel::rescaled(double factor) const
{
    if (!(factor > 0.0))
        throw DomainError("rescale factor must be positive");
    auto open = open_;
    auto close = close_;
    for (auto &row : open)
        for (auto &p : row)
            p *= factor;
    for (auto &row : close)
        for (auto &p : row)
            p *= factor;
    return PricePanel(dates_, tickers_, std::move(open), std::move(close));
}

// ---------------------------------------------------------------------------
// CSV ingestion

PricePanel parse_stock_csv(std::istream &in, const std::string &ticker)
{
    std::string line;
    if (!std::getline(in, line))
        throw ValidationError("empty file for stock " + ticker);
    const auto header = split_csv(line);
    if (header.size() != 3 || header[0] != "date" || header[1] != "open" || header[2] != "close")
        throw ValidationError("stock " + ticker + ": expected header 'date,open,close'");

    std::vector<Date> dates;
    std::vector<double> open, close;
    std::size_t line_no = 1;
    while (std::getline(in, line))
    {
        ++line_no;
        if (is_blank(line))
            continue;
        const auto fields = split_csv(line);
        if (fields.size() != 3)
            throw ValidationError("stock " + ticker + " line " + std::to_string(line_no) + ": expected 3 fields");
        dates.push_back(Date::parse(fields[0]));
        open.push_back(parse_price(fields[1], ticker + " open"));
        close.push_back(parse_price(fields[2], ticker + " close"));
    }
    return PricePanel(std::move(dates), {ticker}, {std::move(open)}, {std::move(close)});
}

PricePanel parse_wide_csv(std::istream &in)
{
    std::string line;
    if (!std::getline(in, line))
        throw ValidationError("empty wide CSV");
    const auto header = split_csv(line);
    if (header.size() < 3 || header[0] != "date" || (header.size() - 1) % 2 != 0)
        throw ValidationError("wide CSV header must be 'date' followed by TICKER.open,TICKER.close pairs");

    std::vector<std::string> tickers;
    for (std::size_t c = 1; c < header.size(); c += 2)
    {
        const auto o = header[c];
        const auto cl = header[c + 1];
        const auto dot = o.rfind('.');
        if (dot == std::string_view::npos || o.substr(dot) != ".open")
            throw ValidationError("wide CSV column '" + std::string(o) + "' is not TICKER.open");
        const auto ticker = o.substr(0, dot);
        if (cl != std::string(ticker) + ".close")
            throw ValidationError("wide CSV column '" + std::string(cl) + "' should be " + std::string(ticker) +
                                  ".close");
        tickers.emplace_back(ticker);
    }

    std::vector<Date> dates;
    std::vector<std::vector<double>> open(tickers.size()), close(tickers.size());
    std::size_t line_no = 1;
    while (std::getline(in, line))
    {
        ++line_no;
        if (is_blank(line))
            continue;
        const auto fields = split_csv(line);
        if (fields.size() != header.size())
            throw ValidationError("wide CSV line " + std::to_string(line_no) + ": expected " +
                                  std::to_string(header.size()) + " fields");
        const Date d = Date::parse(fields[0]);
        for (std::size_t i = 0; i < tickers.size(); ++i)
        {
            if (fields[1 + 2 * i].empty() || fields[2 + 2 * i].empty())
                throw AlignmentError(tickers[i], d.to_string());
            open[i].push_back(parse_price(fields[1 + 2 * i], tickers[i] + " open"));
            close[i].push_back(parse_price(fields[2 + 2 * i], tickers[i] + " close"));
        }
        dates.push_back(d);
    }
    return PricePanel(std::move(dates), std::move(tickers), std::move(open), std::move(close));
}

PricePanel load_price_panel(const std::filesystem::path &source)
{
    namespace fs = std::filesystem;
    if (!fs::exists(source))
        throw ValidationError("input not found: " + source.string());

    if (!fs::is_directory(source))
    {
        std::ifstream in(source);
        if (!in)
            throw ValidationError("cannot open " + source.string());
        return parse_wide_csv(in);
    }

    std::vector<fs::path> files;
    for (const auto &entry : fs::directory_iterator(source))
    {
        if (entry.is_regular_file() && entry.path().extension() == ".csv")
            files.push_back(entry.path());
    }
    if (files.empty())
        throw ValidationError("no .csv files in " + source.string());
    std::sort(files.begin(), files.end(),
              [](const fs::path &a, const fs::path &b) { return a.stem().string() < b.stem().string(); });

    std::vector<PricePanel> singles;
    singles.reserve(files.size());
    for (const auto &f : files)
    {
        std::ifstream in(f);
        if (!in)
            throw ValidationError("cannot open " + f.string());
        singles.push_back(parse_stock_csv(in, f.stem().string()));
    }

    // Align against the union of all dates; any stock missing one is rejected.
    std::vector<Date> all_dates;
    for (const auto &p : singles)
        all_dates.insert(all_dates.end(), p.dates().begin(), p.dates().end());
    std::sort(all_dates.begin(), all_dates.end());
    all_dates.erase(std::unique(all_dates.begin(), all_dates.end()), all_dates.end());

    std::vector<std::string> tickers;
    std::vector<std::vector<double>> open, close;
    for (const auto &p : singles)
    {
        if (p.num_dates() != all_dates.size())
        {
            const auto missing = std::mismatch(all_dates.begin(), all_dates.end(), p.dates().begin(),
                                               p.dates().end());
            throw AlignmentError(p.tickers().front(), missing.first->to_string());
        }
        tickers.push_back(p.tickers().front());
        open.push_back(p.open(0));
        close.push_back(p.close(0));
    }
    return PricePanel(std::move(all_dates), std::move(tickers), std::move(open), std::move(close));
}

void write_wide_csv(std::ostream &out, const PricePanel &panel)
{
    out << "date";
    for (const auto &t : panel.tickers())
        out << ',' << t << ".open," << t << ".close";
    out << '\n';
    char buf[32];
    for (std::size_t t = 0; t < panel.num_dates(); ++t)
    {
        out << panel.dates()[t].to_string();
        for (std::size_t i = 0; i < panel.num_stocks(); ++i)
        {
            std::snprintf(buf, sizeof buf, "%.17g", panel.open(i)[t]);
            out << ',' << buf;
            std::snprintf(buf, sizeof buf, "%.17g", panel.close(i)[t]);
            out << ',' << buf;
        }
        out << '\n';
    }
}

// ---------------------------------------------------------------------------
// Returns

ReturnPanel open_close_returns(const PricePanel &panel)
{
    ReturnPanel out{panel.dates(), panel.tickers(), {}};
    out.r.resize(panel.num_stocks());
    for (std::size_t i = 0; i < panel.num_stocks(); ++i)
    {
        const auto &o = panel.open(i);
        const auto &c = panel.close(i);
        auto &row = out.r[i];
        row.resize(panel.num_dates());
        for (std::size_t t = 0; t < row.size(); ++t)
            row[t] = std::log(c[t] / o[t]);
    }
    return out;
}

ComplementSeries complement_return(const PricePanel &panel, std::string_view excluded, ComplementConvention convention)
{
    if (panel.num_stocks() < 2)
        throw DegenerateInputError("complement return needs at least 2 stocks");
    const std::size_t skip = panel.index_of(excluded);

    std::vector<std::vector<double>> open, close;
    open.reserve(panel.num_stocks());
    close.reserve(panel.num_stocks());
    for (std::size_t j = 0; j < panel.num_stocks(); ++j)
    {
        open.push_back(panel.open(j));
        close.push_back(panel.close(j));
    }

    ComplementSeries out{std::string(excluded), {}, {}};
    const std::size_t T = panel.num_dates();
    if (convention == ComplementConvention::OpenClose)
    {
        out.dates = panel.dates();
        out.r_m.resize(T);
        for (std::size_t t = 0; t < T; ++t)
            out.r_m[t] = std::log(mean_of(close, skip, t) / mean_of(open, skip, t));
    }
    else
    {
        if (T < 2)
            throw DegenerateInputError("close-to-close complement needs at least 2 dates");
        out.dates.assign(panel.dates().begin() + 1, panel.dates().end());
        out.r_m.resize(T - 1);
        for (std::size_t t = 1; t < T; ++t)
            out.r_m[t - 1] = std::log(mean_of(close, skip, t) / mean_of(close, skip, t - 1));
    }
    return out;
}

std::vector<double> index_return(const PricePanel &panel)
{
    std::vector<std::vector<double>> open, close;
    for (std::size_t j = 0; j < panel.num_stocks(); ++j)
    {
        open.push_back(panel.open(j));
        close.push_back(panel.close(j));
    }
    const auto none = panel.num_stocks();
    std::vector<double> r(panel.num_dates());
    for (std::size_t t = 0; t < r.size(); ++t)
        r[t] = std::log(mean_of(close, none, t) / mean_of(open, none, t));
    return r;
}

} // namespace stickiness
