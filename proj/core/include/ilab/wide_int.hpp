#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace ilab {

/// Signed 128-bit integer used for exact coordinate numerators and denominators.
using Int = __int128;

std::string to_string(Int value);

/// Parses an optionally signed decimal string. Throws InputError on garbage or overflow.
Int parse_int(std::string_view text);

/// Converts to long double; exact for |value| < 2^64.
inline long double to_long_double(Int value) { return static_cast<long double>(value); }

/// checked a*b; returns false on overflow of the signed 128-bit range.
inline bool checked_mul(Int a, Int b, Int& out) { return !__builtin_mul_overflow(a, b, &out); }

inline bool checked_add(Int a, Int b, Int& out) { return !__builtin_add_overflow(a, b, &out); }

}  // namespace ilab
