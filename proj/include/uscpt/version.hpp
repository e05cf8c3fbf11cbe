#pragma once

namespace uscpt {

inline constexpr const char* kToolName = "uscpt";
inline constexpr const char* kToolVersion = "0.1.0";

} // namespace uscpt
