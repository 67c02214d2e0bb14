#pragma once

#include <string_view>

namespace citepop {

inline constexpr std::string_view kToolName = "citepop";
inline constexpr std::string_view kVersion = "0.1.0";

} // namespace citepop
