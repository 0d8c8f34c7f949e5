#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <string>

namespace platmatch {

// All prices, valuations and welfare magnitudes in the system. Arbitrary
// precision so tie detection is exact; never convert to floating point
// except for the advisory decimal fields in reports.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Parses "7", "-3" or "3/2". Denominator must be positive and nonzero.
std::optional<Rational> parse_rational(const std::string& text);

// "n" when integral, otherwise "n/d" in lowest terms.
std::string rational_to_string(const Rational& value);

// Advisory decimal rendering for humans; never parsed back.
double rational_to_double(const Rational& value);

}  // namespace platmatch
