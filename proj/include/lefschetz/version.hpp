#pragma once

namespace lefschetz {

inline constexpr const char* kVersion = "1.0.0";
inline constexpr const char* kToolName = "lefschetz";

} // namespace lefschetz
