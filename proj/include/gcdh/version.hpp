#pragma once

namespace gcdh {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace gcdh
