#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

#include "error.hpp"

namespace weingarten {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

inline BigInt numerator_of(const BigRat& x) { return boost::multiprecision::numerator(x); }
inline BigInt denominator_of(const BigRat& x) { return boost::multiprecision::denominator(x); }

inline bool is_integer(const BigRat& x) { return denominator_of(x) == 1; }

/// "p/q" with q >= 1 always written, e.g. "3/1", "-1/2".
inline std::string to_fraction_string(const BigRat& x) {
    return numerator_of(x).str() + "/" + denominator_of(x).str();
}

/// "p" for integers, "p/q" otherwise.
inline std::string to_short_string(const BigRat& x) {
    if (is_integer(x)) return numerator_of(x).str();
    return to_fraction_string(x);
}

inline BigInt parse_bigint(std::string_view s) {
    std::size_t pos = 0;
    bool neg = false;
    if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) {
        neg = s[pos] == '-';
        ++pos;
    }
    if (pos == s.size()) throw parse_error("empty integer '" + std::string(s) + "'");
    BigInt v = 0;
    for (; pos < s.size(); ++pos) {
        const char c = s[pos];
        if (c < '0' || c > '9') throw parse_error("bad integer '" + std::string(s) + "'");
        v = v * 10 + (c - '0');
    }
    return neg ? BigInt(-v) : v;
}

/// Accepts "p" or "p/q".
inline BigRat parse_bigrat(std::string_view s) {
    const auto slash = s.find('/');
    if (slash == std::string_view::npos) return BigRat(parse_bigint(s));
    const BigInt num = parse_bigint(s.substr(0, slash));
    const BigInt den = parse_bigint(s.substr(slash + 1));
    if (den == 0) throw parse_error("zero denominator in '" + std::string(s) + "'");
    return BigRat(num, den);
}

inline BigInt factorial(unsigned n) {
    BigInt r = 1;
    for (unsigned k = 2; k <= n; ++k) r *= k;
    return r;
}

} // namespace weingarten
