#pragma once

#include <gmpxx.h>

#include <string>

namespace padic {

// Exact rationals for generator entries, time-change constants and measure weights.
using Rational = mpq_class;

// Parses "a/b" or "a". Throws InvalidInput on malformed text or zero denominator.
Rational parse_rational(const std::string& text);

// Always "numerator/denominator" in lowest terms, e.g. "-1/1".
std::string to_fraction_string(const Rational& q);

Rational pow(const Rational& base, unsigned exponent);

inline double to_double(const Rational& q) { return q.get_d(); }

} // namespace padic
