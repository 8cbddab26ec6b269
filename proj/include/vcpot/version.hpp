#pragma once

namespace vcpot {
inline constexpr const char* kVersion = "0.1.0";
}
