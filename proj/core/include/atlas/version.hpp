#pragma once

namespace atlas {

inline constexpr const char* kToolName = "boundary_atlas";
inline constexpr const char* kVersion = "0.1.0";

}  // namespace atlas
