#pragma once

namespace twine {

inline constexpr const char* kVersion = "twine 1.0.0";

}
