#pragma once

namespace varlp {

inline constexpr const char* kToolName = "varlp";
inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace varlp
