#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <vector>

namespace citepop {

// Self-describing run parameters, written at the top of every output file
// as '# key=value' comment lines (and as a "meta" object in JSON exports).
// No timestamps: outputs must be byte-identical across reruns.
class RunMetadata {
public:
    void add(std::string key, std::string value) {
        entries_.emplace_back(std::move(key), std::move(value));
    }
    void add(std::string key, std::string_view value) {
        add(std::move(key), std::string(value));
    }
    void add(std::string key, const char* value) {
        add(std::move(key), std::string(value));
    }
    void add(std::string key, double value);
    template <typename T>
        requires std::is_integral_v<T>
    void add(std::string key, T value) {
        add(std::move(key), std::to_string(value));
    }

    const std::vector<std::pair<std::string, std::string>>& entries() const {
        return entries_;
    }

private:
    std::vector<std::pair<std::string, std::string>> entries_;
};

// tool/version/command entries common to every output.
RunMetadata tool_metadata(std::string_view command);

void write_comment_header(std::ostream& out, const RunMetadata& meta);

// 17 significant digits, enough to round-trip any double.
std::string format_double17(double value);
// Shortest representation that round-trips (via std::to_chars).
std::string format_double(double value);

} // namespace citepop
