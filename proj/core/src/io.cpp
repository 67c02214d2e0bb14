#include "citepop/io.hpp"

#include <charconv>
#include <cstdio>
#include <ostream>

#include "citepop/version.hpp"

namespace citepop {

void RunMetadata::add(std::string key, double value) {
    add(std::move(key), format_double17(value));
}

RunMetadata tool_metadata(std::string_view command) {
    RunMetadata meta;
    meta.add("tool", kToolName);
    meta.add("version", kVersion);
    meta.add("command", command);
    return meta;
}

void write_comment_header(std::ostream& out, const RunMetadata& meta) {
    for (const auto& [key, value] : meta.entries()) {
        out << "# " << key << '=' << value << '\n';
    }
}

std::string format_double17(double value) {
    char buf[40];
    const int len = std::snprintf(buf, sizeof buf, "%.17g", value);
    return std::string(buf, static_cast<std::size_t>(len));
}

std::string format_double(double value) {
    char buf[40];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    (void)ec;
    return std::string(buf, ptr);
}

} // namespace citepop
