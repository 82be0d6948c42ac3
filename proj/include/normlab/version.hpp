#pragma once

namespace normlab {

inline constexpr const char* library_version = "0.1.0";

}
