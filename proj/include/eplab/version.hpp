#pragma once

namespace eplab {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace eplab
