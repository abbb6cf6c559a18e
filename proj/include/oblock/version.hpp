#pragma once

namespace oblock {

inline constexpr const char* kVersion = "0.1.0";

}
