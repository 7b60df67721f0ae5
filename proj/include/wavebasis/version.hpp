#pragma once

namespace wavebasis {

inline constexpr const char* version_string = "0.1.0";

}
