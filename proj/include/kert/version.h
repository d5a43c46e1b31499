#pragma once

namespace kert {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace kert
