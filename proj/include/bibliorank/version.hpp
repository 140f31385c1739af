#pragma once

namespace bibliorank {

inline constexpr const char* kToolName = "bibliorank";
inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace bibliorank
