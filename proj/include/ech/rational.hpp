#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace ech {

using Int = boost::multiprecision::cpp_int;

// Exact rational scalar. cpp_rational keeps the canonical form we need:
// gcd(|num|, den) = 1, den >= 1, equal values compare equal componentwise.
using Rational = boost::multiprecision::cpp_rational;

inline Int num(const Rational& r) { return numerator(r); }
inline Int den(const Rational& r) { return denominator(r); }

inline bool is_integer(const Rational& r) { return denominator(r) == 1; }

inline Int floor_int(const Rational& r) {
    Int q = numerator(r) / denominator(r);
    if (r < 0 && q * denominator(r) != numerator(r)) --q;
    return q;
}

inline Int ceil_int(const Rational& r) {
    Int q = numerator(r) / denominator(r);
    if (r > 0 && q * denominator(r) != numerator(r)) ++q;
    return q;
}

// Round half up (only exact halves are ambiguous; callers in this codebase
// never hit the tie case but the choice is pinned down anyway).
inline Int round_int(const Rational& r) {
    return floor_int(r + Rational(1, 2));
}

// Text format "p/q", or "p" when q = 1.
std::string to_string(const Rational& r);

// Parses "p/q" or "p"; throws std::invalid_argument on malformed input
// (including zero denominators and floating-point syntax).
Rational parse_rational(const std::string& s);

}  // namespace ech
