#pragma once

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace hfp {

// All arithmetic in the library is exact. Integers are arbitrary
// precision; rationals appear only where Q^{-1} does.
using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline std::string to_string(const Int& v) { return v.str(); }

/// Renders "p" when the value is integral, "p/q" otherwise.
inline std::string to_string(const Rational& v) {
    if (denominator(v) == 1) return numerator(v).str();
    return numerator(v).str() + "/" + denominator(v).str();
}

inline bool is_integer(const Rational& v) { return denominator(v) == 1; }

/// num/den as an exact rational; den may be negative (the two-argument
/// cpp_rational constructor itself rejects that).
inline Rational make_rational(Int num, Int den) {
    if (den < 0) {
        num = -num;
        den = -den;
    }
    return Rational(std::move(num), std::move(den));
}

}  // namespace hfp
