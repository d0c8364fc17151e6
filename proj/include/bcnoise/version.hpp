#pragma once

#ifndef BCNOISE_VERSION
#define BCNOISE_VERSION "0.0.0"
#endif

namespace bcnoise {

inline constexpr const char* kVersion = BCNOISE_VERSION;

}  // namespace bcnoise
