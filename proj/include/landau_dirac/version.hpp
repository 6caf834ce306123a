#pragma once

#ifndef LANDAU_DIRAC_VERSION
#define LANDAU_DIRAC_VERSION "0.1.0"
#endif

namespace landau_dirac {
inline constexpr const char* version = LANDAU_DIRAC_VERSION;
}
