#include <string>

#include <doctest.h>

#include "demandcast/series.hpp"

using namespace demandcast;

namespace {

const std::string kSmall = "series_id,date,count\n"
                           "C61,2023-01-08,153\n"
                           "C61,2023-01-15,148\n"
                           "C61,2023-01-22,160\n";

bool mentions(const ParseError& e, const std::string& needle)
{
    return std::string(e.what()).find(needle) != std::string::npos;
}

} // namespace

TEST_CASE("rows group into one validated series")
{
    std::vector<CountSeries> all = parse_series_csv(kSmall);
    REQUIRE(all.size() == 1);
    CHECK(all[0].id == "C61");
    REQUIRE(all[0].counts.size() == 3);
    CHECK(all[0].counts[0] == 153);
    CHECK(all[0].counts[2] == 160);
    CHECK(format_date(all[0].dates[0]) == "2023-01-08");
    CHECK(format_date(all[0].dates[2]) == "2023-01-22");
}

TEST_CASE("rows out of date order are sorted, duplicates rejected")
{
    std::vector<CountSeries> all = parse_series_csv("series_id,date,count\n"
                                                    "A,2023-01-22,3\n"
                                                    "A,2023-01-08,1\n"
                                                    "A,2023-01-15,2\n");
    CHECK(all[0].counts == std::vector<std::int64_t>{1, 2, 3});

    try {
        parse_series_csv("series_id,date,count\n"
                         "A,2023-01-08,1\n"
                         "A,2023-01-15,2\n"
                         "A,2023-01-15,9\n"
                         "A,2023-01-22,3\n");
        FAIL("duplicate date accepted");
    } catch (const ParseError& e) {
        CHECK(mentions(e, "2023-01-15"));
        CHECK(mentions(e, "line 4"));
    }
}

TEST_CASE("count errors cite the offending line")
{
    try {
        parse_series_csv("series_id,date,count\nA,2023-01-08,1\nA,2023-01-15,-2\n");
        FAIL("negative count accepted");
    } catch (const ParseError& e) {
        CHECK(mentions(e, "line 3"));
        CHECK(mentions(e, "non-negative"));
    }
    CHECK_THROWS_AS(parse_series_csv("series_id,date,count\nA,2023-01-08,3.5\n"), ParseError);
    CHECK_THROWS_AS(parse_series_csv("series_id,date,count\nA,2023-01-08,abc\n"), ParseError);
    CHECK_THROWS_AS(parse_series_csv("series_id,date,count\nA,2023-01-08,\n"), ParseError);
}

TEST_CASE("structural problems are rejected with context")
{
    CHECK_THROWS_AS(parse_series_csv(""), ParseError);
    CHECK_THROWS_AS(parse_series_csv("id,when,how_many\nA,2023-01-08,1\n"), ParseError);
    CHECK_THROWS_AS(parse_series_csv("series_id,date,count\n"), ParseError);
    CHECK_THROWS_AS(parse_series_csv("series_id,date,count\nA,2023-01-08\n"), ParseError);
    CHECK_THROWS_AS(parse_series_csv("series_id,date,count\nA,2023-01-08,1,junk\n"),
                    ParseError);
    CHECK_THROWS_AS(parse_series_csv("series_id,date,count\nA,2023-13-01,1\n"), ParseError);
    CHECK_THROWS_AS(parse_series_csv("series_id,date,count\nA,2023-02-29,1\n"), ParseError);
    CHECK_THROWS_AS(parse_series_csv("series_id,date,count\nA,08-01-2023,1\n"), ParseError);
    CHECK_THROWS_AS(parse_series_csv("series_id,date,count\n,2023-01-08,1\n"), ParseError);
}

TEST_CASE("series level invariants: length, cadence")
{
    try {
        parse_series_csv("series_id,date,count\nB,2023-01-08,1\nB,2023-01-15,2\n");
        FAIL("two-point series accepted");
    } catch (const ParseError& e) {
        CHECK(mentions(e, "B"));
        CHECK(mentions(e, "3"));
    }

    try {
        parse_series_csv("series_id,date,count\n"
                         "B,2023-01-08,1\n"
                         "B,2023-01-15,2\n"
                         "B,2023-01-29,3\n");
        FAIL("gap accepted");
    } catch (const ParseError& e) {
        CHECK(mentions(e, "cadence"));
        CHECK(mentions(e, "B"));
    }
}

TEST_CASE("windows line endings and surrounding blanks are tolerated")
{
    std::vector<CountSeries> all = parse_series_csv("series_id,date,count\r\n"
                                                    "A, 2023-01-08, 4\r\n"
                                                    "A,2023-01-15,5\r\n"
                                                    "A,2023-01-22,6\r\n"
                                                    "\r\n");
    REQUIRE(all.size() == 1);
    CHECK(all[0].counts == std::vector<std::int64_t>{4, 5, 6});
}

TEST_CASE("multiple series come back sorted by id")
{
    std::vector<CountSeries> all = parse_series_csv("series_id,date,count\n"
                                                    "Z,2023-01-08,1\n"
                                                    "A,2023-01-08,4\n"
                                                    "Z,2023-01-15,2\n"
                                                    "A,2023-01-15,5\n"
                                                    "Z,2023-01-22,3\n"
                                                    "A,2023-01-22,6\n");
    REQUIRE(all.size() == 2);
    CHECK(all[0].id == "A");
    CHECK(all[1].id == "Z");
}

TEST_CASE("serialize and parse round trip")
{
    std::vector<CountSeries> all = parse_series_csv(kSmall);
    CHECK(serialize_series_csv(all) == kSmall);

    std::vector<CountSeries> again = parse_series_csv(serialize_series_csv(all));
    REQUIRE(again.size() == all.size());
    CHECK(again[0].id == all[0].id);
    CHECK(again[0].counts == all[0].counts);
    CHECK(again[0].dates == all[0].dates);
}

TEST_CASE("missing files surface as input errors")
{
    CHECK_THROWS_AS(load_series_file("/nonexistent/corpus.csv"), ParseError);
}
