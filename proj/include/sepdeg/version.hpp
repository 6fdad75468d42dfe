#pragma once

namespace sepdeg {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace sepdeg
