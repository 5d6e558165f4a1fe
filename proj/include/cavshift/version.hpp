#pragma once

namespace cavshift {

inline constexpr const char* project_name = "cavshift";
inline constexpr const char* project_version = "0.1.0";

}  // namespace cavshift
