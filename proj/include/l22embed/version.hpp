#pragma once

namespace l22 {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace l22
