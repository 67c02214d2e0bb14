#include "common.hpp"

#include <cstdlib>
#include <fstream>
#include <stdexcept>

#include "citepop/errors.hpp"

namespace citepop::cli {

std::filesystem::path resolve_output(const std::string& path) {
    std::filesystem::path p(path);
    if (p.is_absolute()) return p;
    const char* base = std::getenv("CITEPOP_OUTPUT_DIR");
    if (base == nullptr || *base == '\0') return p;
    return std::filesystem::path(base) / p;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write " + path.string());
    out << content;
    if (!out) throw DataError("write failed for " + path.string());
}

MonthStamp parse_month_flag(const std::string& text, const std::string& flag) {
    if (text.size() == 7) {
        if (const auto month = MonthStamp::parse(text)) return *month;
    }
    throw std::invalid_argument(flag + " expects YYYY-MM, got '" + text + "'");
}

std::vector<MonthStamp> parse_time_list(const std::vector<std::string>& texts,
                                        const std::string& flag) {
    std::vector<MonthStamp> times;
    times.reserve(texts.size());
    for (const std::string& t : texts) times.push_back(parse_month_flag(t, flag));
    return times;
}

std::string join_doubles(const std::vector<double>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i > 0) out += ',';
        out += format_double(values[i]);
    }
    return out;
}

std::string join_months(const std::vector<MonthStamp>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i > 0) out += ',';
        out += values[i].to_string();
    }
    return out;
}

} // namespace citepop::cli
