#pragma once

namespace prefpipe {

inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace prefpipe
