#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace xshap {

// All exact arithmetic in the library runs on arbitrary-precision rationals,
// so "score == 0" is a decidable question rather than a tolerance check.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Parses "p/q", an integer literal, or a decimal literal ("1.75" -> 7/4).
// Every form is parsed exactly; throws argument_error on malformed input.
Rational parse_rational(std::string_view text);

// True iff `text` would be accepted by parse_rational.
bool is_rational_literal(std::string_view text);

// Canonical "p/q" form, e.g. "0/1", "-3/8". Denominator is always printed.
std::string to_fraction_string(const Rational& r);

// Fixed-point decimal with `places` fractional digits, rounded half away
// from zero, e.g. 1/4 -> "0.250000".
std::string to_decimal_string(const Rational& r, int places = 6);

// Exact factorial of n >= 0.
BigInt factorial(int n);

} // namespace xshap
