#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <stdexcept>

#include "citepop/month.hpp"

using citepop::MonthStamp;

TEST_CASE("epoch and accessors") {
    const MonthStamp m = MonthStamp::from_ym(1893, 1);
    CHECK(m.value() == 0);
    CHECK(m.year() == 1893);
    CHECK(m.month() == 1);

    const MonthStamp july = MonthStamp::from_ym(1995, 7);
    CHECK(july.value() == (1995 - 1893) * 12 + 6);
    CHECK(july.year() == 1995);
    CHECK(july.month() == 7);
}

TEST_CASE("parse accepts YYYY-MM and truncates YYYY-MM-DD") {
    const auto a = MonthStamp::parse("1995-07");
    REQUIRE(a.has_value());
    CHECK(a->to_string() == "1995-07");

    const auto b = MonthStamp::parse("1893-07-01");
    REQUIRE(b.has_value());
    CHECK(b->year() == 1893);
    CHECK(b->month() == 7);
    CHECK(*b == MonthStamp::from_ym(1893, 7));

    const auto c = MonthStamp::parse("2010-12-31");
    REQUIRE(c.has_value());
    CHECK(*c == *MonthStamp::parse("2010-12"));
}

TEST_CASE("parse rejects malformed and out-of-range input") {
    CHECK_FALSE(MonthStamp::parse("").has_value());
    CHECK_FALSE(MonthStamp::parse("1995").has_value());
    CHECK_FALSE(MonthStamp::parse("95-07").has_value());
    CHECK_FALSE(MonthStamp::parse("1995/07").has_value());
    CHECK_FALSE(MonthStamp::parse("1995-00").has_value());
    CHECK_FALSE(MonthStamp::parse("1995-13").has_value());
    CHECK_FALSE(MonthStamp::parse("1995-7").has_value());
    CHECK_FALSE(MonthStamp::parse("1995-07-").has_value());
    CHECK_FALSE(MonthStamp::parse("1995-07-00").has_value());
    CHECK_FALSE(MonthStamp::parse("1995-07-32").has_value());
    CHECK_FALSE(MonthStamp::parse("1995-07-1x").has_value());
    CHECK_FALSE(MonthStamp::parse("199a-07").has_value());
    CHECK_FALSE(MonthStamp::parse("1892-12").has_value());
    CHECK_FALSE(MonthStamp::parse("0001-01").has_value());
}

TEST_CASE("representable range is 1893-01 through 2226-05") {
    CHECK(MonthStamp::parse("1893-01").has_value());
    CHECK(MonthStamp::parse("2226-05").has_value());
    CHECK_FALSE(MonthStamp::parse("2226-06").has_value());
    CHECK(MonthStamp::from_ym(2226, 5).value() == MonthStamp::kMaxValue);
    CHECK_THROWS_AS(MonthStamp(-1), std::invalid_argument);
    CHECK_THROWS_AS(MonthStamp(MonthStamp::kMaxValue + 1), std::invalid_argument);
    CHECK_THROWS_AS(MonthStamp::from_ym(1995, 0), std::invalid_argument);
    CHECK_THROWS_AS(MonthStamp::from_ym(1995, 13), std::invalid_argument);
}

TEST_CASE("to_string pads to four and two digits") {
    CHECK(MonthStamp::from_ym(1893, 1).to_string() == "1893-01");
    CHECK(MonthStamp::from_ym(2001, 11).to_string() == "2001-11");
    CHECK(MonthStamp::from_ym(2010, 2).to_string() == "2010-02");
}

TEST_CASE("arithmetic and ordering") {
    const MonthStamp a = MonthStamp::from_ym(1999, 11);
    const MonthStamp b = a.plus_months(3);
    CHECK(b == MonthStamp::from_ym(2000, 2));
    CHECK(b - a == 3);
    CHECK(a - b == -3);
    CHECK(a < b);
    CHECK(b.plus_months(-3) == a);
    CHECK_THROWS_AS(MonthStamp::from_ym(1893, 1).plus_months(-1), std::invalid_argument);
}

TEST_CASE("round trip parse and to_string across the whole range") {
    for (int v = 0; v <= MonthStamp::kMaxValue; v += 7) {
        const MonthStamp m{v};
        const auto parsed = MonthStamp::parse(m.to_string());
        REQUIRE(parsed.has_value());
        CHECK(parsed->value() == v);
    }
}
