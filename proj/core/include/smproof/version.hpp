#pragma once

namespace smproof {
inline constexpr const char* kVersion = "0.1.0";
}
