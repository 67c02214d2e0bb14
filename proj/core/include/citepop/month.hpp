#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace citepop {

// Calendar month with 1893-01 as month zero. Publication dates and testing
// times are stored at this resolution; only month differences (ages) enter
// any score formula, so the epoch choice is arbitrary as long as it covers
// the corpus.
class MonthStamp {
public:
    static constexpr int kEpochYear = 1893;
    static constexpr int kMaxValue = 4000; // 1893-01 .. 2226-05

    constexpr MonthStamp() = default;
    explicit MonthStamp(int value);

    static MonthStamp from_ym(int year, int month);

    // Accepts "YYYY-MM" or "YYYY-MM-DD"; the day component is dropped.
    // Returns nullopt for anything unparseable or outside the representable
    // range.
    static std::optional<MonthStamp> parse(std::string_view text);

    constexpr int value() const { return value_; }
    constexpr int year() const { return kEpochYear + value_ / 12; }
    constexpr int month() const { return value_ % 12 + 1; }

    std::string to_string() const; // "YYYY-MM"

    MonthStamp plus_months(int months) const { return MonthStamp(value_ + months); }

    friend constexpr int operator-(MonthStamp a, MonthStamp b) { return a.value_ - b.value_; }
    friend constexpr auto operator<=>(MonthStamp a, MonthStamp b) = default;

private:
    int value_ = 0;
};

} // namespace citepop
