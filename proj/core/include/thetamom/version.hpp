#pragma once

#include <string_view>

#ifndef THETAMOM_VERSION
#define THETAMOM_VERSION "0.0.0"
#endif

namespace thetamom {

inline constexpr std::string_view kToolVersion = "thetamom-" THETAMOM_VERSION;

}  // namespace thetamom
