#pragma once

namespace osc {

inline constexpr const char* kToolName = "oscitools";
inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace osc
