#pragma once

namespace critwave {

inline constexpr const char* version = "0.1.0";

}  // namespace critwave
