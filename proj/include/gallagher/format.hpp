#pragma once

#include <cstdio>
#include <string>

namespace gallagher {

/// Shortest %.17g rendering: 17 significant digits round-trip any double.
inline std::string g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace gallagher
