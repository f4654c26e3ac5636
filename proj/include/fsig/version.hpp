#pragma once

namespace fsig {

inline constexpr const char* kToolVersion = "fsiglab 0.1.0";

} // namespace fsig
