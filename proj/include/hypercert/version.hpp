#pragma once

namespace hypercert {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace hypercert
