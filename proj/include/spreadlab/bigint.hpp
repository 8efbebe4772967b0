#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <optional>
#include <string>
#include <string_view>

namespace spreadlab {

using BigInt = boost::multiprecision::cpp_int;

// Parses a nonnegative decimal string with no sign, spaces or leading zeros.
inline std::optional<BigInt> parse_decimal(std::string_view s) {
    if (s.empty()) return std::nullopt;
    if (s.size() > 1 && s[0] == '0') return std::nullopt;
    for (char ch : s)
        if (!std::isdigit(static_cast<unsigned char>(ch))) return std::nullopt;
    return BigInt(std::string(s));
}

inline std::string to_decimal(const BigInt& v) { return v.str(); }

inline bool divides(const BigInt& d, const BigInt& n) { return d != 0 && n % d == 0; }

// Largest power of two dividing a positive integer.
inline BigInt two_part(BigInt n) {
    BigInt p = 1;
    while (n != 0 && (n & 1) == 0) {
        n >>= 1;
        p <<= 1;
    }
    return p;
}

}  // namespace spreadlab
