#pragma once

namespace vproof {

inline constexpr const char* kToolVersion = "0.1.0";

} // namespace vproof
