#pragma once

namespace wittenlab {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace wittenlab
