#pragma once

namespace kmlab {

inline constexpr const char* version = "0.1.0";

} // namespace kmlab
