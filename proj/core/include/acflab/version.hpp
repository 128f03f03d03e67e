#pragma once

namespace acflab {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace acflab
