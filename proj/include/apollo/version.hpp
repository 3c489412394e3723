#pragma once

namespace apollo {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kToolName = "apollo";

}  // namespace apollo
