#pragma once

namespace gruen {

inline constexpr const char* kVersion = "0.1.0";

} // namespace gruen
