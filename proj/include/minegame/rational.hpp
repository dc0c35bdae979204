#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace minegame {

// Exact rational scalar used wherever a comparison against a case boundary
// decides the answer.
using Rational = mpq_class;

// Parses an exact rational from text. Accepted forms: integers ("150"),
// decimals ("0.8", "-1.25", "2.5e-3") and fractions ("100/13"). Decimal input
// is converted to the exact value it denotes, so "0.1" becomes 1/10 rather
// than the nearest binary double. Throws std::invalid_argument on bad input.
Rational parse_rational(std::string_view text);

// Exact value of a finite double (every double is a dyadic rational).
// Throws std::invalid_argument for NaN or infinity.
Rational rational_from_double(double value);

// Continued-fraction best approximation with denominator <= max_denominator.
// Use this when a double stands for a "short" decimal such as 0.8 and the
// caller wants 4/5 instead of the double's exact binary expansion.
Rational approximate_rational(double value, std::int64_t max_denominator);

double to_double(const Rational& value);

// "num/den", or just "num" for integers.
std::string to_fraction_string(const Rational& value);

// Decimal rendering via double with the given number of significant digits.
std::string to_decimal_string(const Rational& value, int significant_digits = 12);
std::string to_decimal_string(double value, int significant_digits = 12);

}  // namespace minegame
