#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "citepop/io.hpp"
#include "citepop/month.hpp"

namespace citepop::cli {

// Relative output paths land under CITEPOP_OUTPUT_DIR when it is set.
std::filesystem::path resolve_output(const std::string& path);

// Whole-file write after all computation, so failed runs leave nothing.
void write_file(const std::filesystem::path& path, const std::string& content);

// YYYY-MM only on the command line.
MonthStamp parse_month_flag(const std::string& text, const std::string& flag);

std::vector<MonthStamp> parse_time_list(const std::vector<std::string>& texts,
                                        const std::string& flag);

std::string join_doubles(const std::vector<double>& values);
std::string join_months(const std::vector<MonthStamp>& values);

} // namespace citepop::cli
