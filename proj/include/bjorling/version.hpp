#pragma once

namespace bjorling {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace bjorling
