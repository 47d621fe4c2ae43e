#pragma once

#include <charconv>
#include <cstdio>
#include <string>

namespace discoord {

// Fixed 4-decimal rendering for reports and flow diagrams. Values that round
// to zero lose their sign so near-zero residuals never print as "-0.0000".
inline std::string format_fixed4(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    std::string s = buf;
    if (s == "-0.0000") s.erase(s.begin());
    return s;
}

// Shortest representation that parses back to the same double; used for
// traces so sampled state is exact.
inline std::string format_shortest(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

}  // namespace discoord
