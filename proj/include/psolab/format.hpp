#pragma once

#include <array>
#include <charconv>
#include <string>

namespace psolab {

/// Shortest decimal form that parses back to the same double. Used for all
/// numeric output; the precision comparisons span ~40 orders of magnitude,
/// so lossy fixed-width formatting is never acceptable.
inline std::string format_double(double value) {
    std::array<char, 32> buf;
    const auto result = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return std::string(buf.data(), result.ptr);
}

} // namespace psolab
