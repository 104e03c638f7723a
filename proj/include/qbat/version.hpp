#pragma once

namespace qbat {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace qbat
