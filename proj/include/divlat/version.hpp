#pragma once

#include <string_view>

namespace divlat {

inline constexpr std::string_view kToolVersion = "divlat 1.0.0";

}  // namespace divlat
