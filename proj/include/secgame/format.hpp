#pragma once

#include <cstdio>
#include <string>

namespace secgame {

// All human-facing numeric output (CLI prints, CSV cells) goes through this:
// nine significant digits, shortest form.
inline std::string fmt9(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

}  // namespace secgame
