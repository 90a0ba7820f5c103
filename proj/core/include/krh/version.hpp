#pragma once

namespace krh {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace krh
