#pragma once

namespace hardysim {

inline constexpr const char* kToolName = "hardysim";
inline constexpr const char* kToolVersion = "1.0.0";

}  // namespace hardysim
