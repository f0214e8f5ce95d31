#include "oracles.hpp"

#include "stickiness/errors.hpp"
#include "stickiness/market_data.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace stickiness;

namespace
{

std::vector<Date> consecutive_days(std::size_t n)
{
    std::vector<Date> d;
    for (unsigned k = 0; k < n; ++k)
        d.emplace_back(2015, 3, 2 + k);
    return d;
}

PricePanel random_panel(std::size_t N, std::size_t T, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(10.0, 200.0);
    std::vector<std::string> tickers;
    std::vector<std::vector<double>> open(N, std::vector<double>(T)), close(N, std::vector<double>(T));
    for (std::size_t i = 0; i < N; ++i)
    {
        tickers.push_back("S" + std::to_string(i));
        for (std::size_t t = 0; t < T; ++t)
        {
            open[i][t] = u(rng);
            close[i][t] = u(rng);
        }
    }
    return PricePanel(consecutive_days(T), tickers, open, close);
}

struct TempDir
{
    std::filesystem::path path;
    explicit TempDir(const std::string &name) : path(std::filesystem::temp_directory_path() / name)
    {
        std::filesystem::remove_all(path);
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
};

void write_file(const std::filesystem::path &p, const std::string &body)
{
    std::ofstream(p) << body;
}

} // namespace

TEST_CASE("Date parsing and ordering", "[market-data]")
{
    const Date d = Date::parse("2015-03-23");
    CHECK(d.to_string() == "2015-03-23");
    CHECK(Date::parse("2016-04-19") > d);
    CHECK_THROWS_AS(Date::parse("2015-02-30"), ValidationError);
    CHECK_THROWS_AS(Date::parse("23/03/2015"), ValidationError);

    const auto r = DateRange::parse("2016-05-23:2016-10-13");
    CHECK(r.contains(Date::parse("2016-05-23")));
    CHECK(r.contains(Date::parse("2016-10-13")));
    CHECK_FALSE(r.contains(Date::parse("2016-10-14")));
    CHECK_FALSE(r.overlaps(DateRange::parse("2016-10-14:2017-03-10")));
    CHECK(r.overlaps(DateRange::parse("2016-10-13:2017-03-10")));
    CHECK_THROWS_AS(DateRange::parse("2016-10-13:2016-05-23"), ValidationError);
}

TEST_CASE("PricePanel enforces its invariants", "[market-data]")
{
    const auto dates = consecutive_days(2);
    SECTION("single stock with constant prices is valid")
    {
        PricePanel p(dates, {"A"}, {{100, 100}}, {{100, 100}});
        CHECK(p.num_stocks() == 1);
        CHECK(p.num_dates() == 2);
    }
    SECTION("non-positive price is rejected")
    {
        CHECK_THROWS_AS(PricePanel(dates, {"A"}, {{100, -1}}, {{100, 100}}), ValidationError);
        CHECK_THROWS_AS(PricePanel(dates, {"A"}, {{100, 100}}, {{0, 100}}), ValidationError);
    }
    SECTION("dates must be strictly increasing")
    {
        CHECK_THROWS_AS(PricePanel({dates[1], dates[0]}, {"A"}, {{1, 1}}, {{1, 1}}), ValidationError);
        CHECK_THROWS_AS(PricePanel({dates[0], dates[0]}, {"A"}, {{1, 1}}, {{1, 1}}), ValidationError);
    }
    SECTION("ragged rows are rejected")
    {
        CHECK_THROWS_AS(PricePanel(dates, {"A"}, {{1}}, {{1, 1}}), ValidationError);
    }
    SECTION("unknown ticker lookup")
    {
        PricePanel p(dates, {"A"}, {{1, 1}}, {{1, 1}});
        CHECK_THROWS_AS(p.index_of("ZZ"), LookupError);
    }
}

TEST_CASE("per-stock CSV directory loads and aligns", "[market-data]")
{
    TempDir dir("stickiness_md_dir");
    write_file(dir.path / "AAA.csv", "date,open,close\n2015-03-23,10,11\n2015-03-24,11,12\n");
    write_file(dir.path / "BBB.csv", "date,open,close\r\n2015-03-23,20,19\r\n2015-03-24,19,21\r\n");
    const auto p = load_price_panel(dir.path);
    REQUIRE(p.num_stocks() == 2);
    CHECK(p.tickers() == std::vector<std::string>{"AAA", "BBB"});
    CHECK(p.close(1)[1] == 21.0);

    SECTION("missing date names stock and date")
    {
        write_file(dir.path / "CCC.csv", "date,open,close\n2015-03-23,5,5\n");
        try
        {
            (void)load_price_panel(dir.path);
            FAIL("expected AlignmentError");
        }
        catch (const AlignmentError &e)
        {
            CHECK(e.stock() == "CCC");
            CHECK(e.date() == "2015-03-24");
        }
    }
    SECTION("negative price")
    {
        write_file(dir.path / "CCC.csv", "date,open,close\n2015-03-23,5,5\n2015-03-24,-5,5\n");
        CHECK_THROWS_AS(load_price_panel(dir.path), ValidationError);
    }
}

TEST_CASE("wide CSV round-trips exactly", "[market-data]")
{
    const auto panel = random_panel(3, 7, 11);
    std::stringstream ss;
    write_wide_csv(ss, panel);
    const auto back = parse_wide_csv(ss);
    CHECK(back.tickers() == panel.tickers());
    CHECK(back.dates() == panel.dates());
    for (std::size_t i = 0; i < 3; ++i)
    {
        CHECK(back.open(i) == panel.open(i));
        CHECK(back.close(i) == panel.close(i));
    }

    std::istringstream bad("date,A.open,A.close\n2015-03-23,1,\n");
    CHECK_THROWS_AS(parse_wide_csv(bad), AlignmentError);
    CHECK_THROWS_AS(load_price_panel("/nonexistent/panel.csv"), ValidationError);
}

TEST_CASE("open_close_returns", "[market-data]")
{
    const auto dates = consecutive_days(2);
    PricePanel p(dates, {"A"}, {{100, 100}}, {{100, 100 * std::exp(0.01)}});
    const auto r = open_close_returns(p);
    CHECK(r.r[0][0] == 0.0);
    CHECK(std::fabs(r.r[0][1] - 0.01) < 1e-15);

    const auto panel = random_panel(5, 10, 3);
    const auto rp = open_close_returns(panel);
    REQUIRE(rp.num_stocks() == 5);
    REQUIRE(rp.num_dates() == 10);
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t t = 0; t < 10; ++t)
        {
            const long double expected = std::log(static_cast<long double>(panel.close(i)[t])) -
                                         std::log(static_cast<long double>(panel.open(i)[t]));
            CHECK(std::fabs(rp.r[i][t] - static_cast<double>(expected)) < 4e-15);
        }
}

TEST_CASE("complement_return", "[market-data]")
{
    SECTION("two stocks: complement of A is B's own return, bit for bit")
    {
        const auto panel = random_panel(2, 12, 5);
        const auto c = complement_return(panel, "S0");
        const auto r = open_close_returns(panel);
        CHECK(c.r_m == r.r[1]);
    }
    SECTION("identical constant prices give zero")
    {
        PricePanel p(consecutive_days(3), {"A", "B", "C"}, {{5, 5, 5}, {5, 5, 5}, {5, 5, 5}}, {{5, 5, 5}, {5, 5, 5}, {5, 5, 5}});
        for (double v : complement_return(p, "B").r_m)
            CHECK(v == 0.0);
    }
    SECTION("five stocks against the averaged-price log ratio")
    {
        const auto panel = random_panel(5, 10, 9);
        const auto c = complement_return(panel, "S3");
        for (std::size_t t = 0; t < 10; ++t)
        {
            long double so = 0, sc = 0;
            for (std::size_t j : {0, 1, 2, 4})
            {
                so += panel.open(j)[t];
                sc += panel.close(j)[t];
            }
            CHECK(std::fabs(c.r_m[t] - static_cast<double>(std::log((sc / 4) / (so / 4)))) < 4e-15);
        }
    }
    SECTION("close-to-close convention drops the first date")
    {
        const auto panel = random_panel(3, 6, 1);
        const auto c = complement_return(panel, "S0", ComplementConvention::CloseClose);
        REQUIRE(c.r_m.size() == 5);
        CHECK(c.dates.front() == panel.dates()[1]);
        const double expected = std::log((panel.close(1)[1] + panel.close(2)[1]) / (panel.close(1)[0] + panel.close(2)[0]));
        CHECK(c.r_m[0] == Catch::Approx(expected).epsilon(1e-14));
    }
    SECTION("errors")
    {
        const auto panel = random_panel(3, 4, 2);
        CHECK_THROWS_AS(complement_return(panel, "XX"), LookupError);
        const auto one = random_panel(1, 4, 2);
        CHECK_THROWS_AS(complement_return(one, "S0"), DegenerateInputError);
    }
}

TEST_CASE("returns are invariant to a common price rescaling", "[market-data][property]")
{
    for (std::uint64_t seed = 0; seed < 20; ++seed)
    {
        const auto panel = random_panel(4, 15, 100 + seed);
        const double factor = std::exp(static_cast<double>(seed % 7) - 3.0);
        const auto scaled = panel.rescaled(factor);
        const auto a = open_close_returns(panel);
        const auto b = open_close_returns(scaled);
        for (std::size_t i = 0; i < 4; ++i)
        {
            for (std::size_t t = 0; t < 15; ++t)
                CHECK(std::fabs(a.r[i][t] - b.r[i][t]) < 1e-14);
            const auto ca = complement_return(panel, panel.tickers()[i]);
            const auto cb = complement_return(scaled, panel.tickers()[i]);
            for (std::size_t t = 0; t < 15; ++t)
                CHECK(std::fabs(ca.r_m[t] - cb.r_m[t]) < 1e-14);
        }
    }
}
