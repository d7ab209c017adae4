#pragma once

namespace nonbark {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace nonbark
