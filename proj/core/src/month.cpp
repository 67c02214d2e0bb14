#include "citepop/month.hpp"

#include <charconv>
#include <stdexcept>

namespace citepop {

namespace {

bool parse_int(std::string_view text, int& out) {
    if (text.empty()) return false;
    const auto* first = text.data();
    const auto* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc{} && ptr == last;
}

} // namespace

MonthStamp::MonthStamp(int value) : value_(value) {
    if (value < 0 || value > kMaxValue) {
        throw std::invalid_argument("month value out of range: " + std::to_string(value));
    }
}

MonthStamp MonthStamp::from_ym(int year, int month) {
    if (month < 1 || month > 12) {
        throw std::invalid_argument("month out of range: " + std::to_string(month));
    }
    return MonthStamp((year - kEpochYear) * 12 + (month - 1));
}

std::optional<MonthStamp> MonthStamp::parse(std::string_view text) {
    // "YYYY-MM" or "YYYY-MM-DD"; the day is validated syntactically and dropped.
    if (text.size() != 7 && text.size() != 10) return std::nullopt;
    if (text[4] != '-') return std::nullopt;
    if (text.size() == 10 && text[7] != '-') return std::nullopt;

    int year = 0;
    int month = 0;
    if (!parse_int(text.substr(0, 4), year)) return std::nullopt;
    if (!parse_int(text.substr(5, 2), month)) return std::nullopt;
    if (text.size() == 10) {
        int day = 0;
        if (!parse_int(text.substr(8, 2), day)) return std::nullopt;
        if (day < 1 || day > 31) return std::nullopt;
    }
    if (month < 1 || month > 12) return std::nullopt;

    const int value = (year - kEpochYear) * 12 + (month - 1);
    if (value < 0 || value > kMaxValue) return std::nullopt;
    return MonthStamp(value);
}

std::string MonthStamp::to_string() const {
    char buf[8];
    const int y = year();
    const int m = month();
    buf[0] = static_cast<char>('0' + y / 1000);
    buf[1] = static_cast<char>('0' + y / 100 % 10);
    buf[2] = static_cast<char>('0' + y / 10 % 10);
    buf[3] = static_cast<char>('0' + y % 10);
    buf[4] = '-';
    buf[5] = static_cast<char>('0' + m / 10);
    buf[6] = static_cast<char>('0' + m % 10);
    return std::string(buf, 7);
}

} // namespace citepop
