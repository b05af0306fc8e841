#pragma once

namespace sfmap {

inline constexpr const char* kVersion = "0.1.0";

}
