#pragma once

namespace ilion {

inline constexpr const char* kEngineVersion = "1.0.0";

}  // namespace ilion
