#pragma once

namespace ctmp {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace ctmp
