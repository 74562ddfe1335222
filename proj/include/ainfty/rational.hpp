#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

#include "errors.hpp"

namespace ainfty {

/// Exact arbitrary-precision rational. Always reduced, denominator > 0.
/// All arithmetic in the engine is exact; no floating point anywhere.
using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

inline Integer numerator(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Integer denominator(const Rational& q) { return boost::multiprecision::denominator(q); }

/// Canonical serialization: "p" for integers, "p/q" otherwise.
inline std::string to_string(const Rational& q) {
    if (denominator(q) == 1)
        return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

/// Parse "p" or "p/q" with optional sign. Rejects q = 0 and garbage.
inline Rational parse_rational(const std::string& s) {
    const auto slash = s.find('/');
    Integer num, den = 1;
    try {
        if (slash == std::string::npos) {
            num = Integer(s);
        } else {
            num = Integer(s.substr(0, slash));
            den = Integer(s.substr(slash + 1));
        }
    } catch (const std::runtime_error&) {
        throw parse_error("cannot parse rational '" + s + "'");
    }
    if (den == 0)
        throw malformed_input("zero denominator in rational '" + s + "'");
    return Rational(num, den);
}

inline int parity_sign(long long exponent) { return (exponent % 2 == 0) ? 1 : -1; }

} // namespace ainfty
