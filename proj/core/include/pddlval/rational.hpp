#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace pddlval {

/// Exact rational number used for every time stamp, duration and fluent value.
using Rational = boost::multiprecision::cpp_rational;

/// Parses a decimal literal such as "3", "-0.5" or "13.25" exactly.
/// Throws std::invalid_argument on malformed input.
Rational parse_decimal(std::string_view text);

/// Shortest exact text: a plain decimal when the expansion terminates
/// ("3.25"), otherwise "num/den".
std::string to_string(const Rational& value);

/// Lossy conversion for human-facing output only.
double to_double(const Rational& value);

}  // namespace pddlval
