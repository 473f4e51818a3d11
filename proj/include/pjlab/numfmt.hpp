#pragma once

#include <charconv>
#include <string>

namespace pjlab {

// Shortest round-trip decimal form of a double. Used everywhere a
// number ends up in a file so that output is byte-reproducible.
inline std::string fmt_double(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

}  // namespace pjlab
