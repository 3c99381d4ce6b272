#pragma once

namespace accelrad {

inline constexpr const char* version = "0.1.0";

}  // namespace accelrad
