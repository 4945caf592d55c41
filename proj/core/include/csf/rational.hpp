#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace csf {

// Exact arithmetic everywhere payoffs and probabilities flow; doubles are
// confined to the numeric solver internals.
using Rational = boost::multiprecision::cpp_rational;

// Parses "-2", "0.5", "1e-9", "3/4" into an exact rational.
// Throws Error(errc::syntax_error) on malformed input.
Rational rational_from_string(std::string_view text);

// "p" when the denominator is 1, "p/q" otherwise.
std::string rational_to_string(const Rational& value);

double rational_to_double(const Rational& value);

// Exact dyadic rational of the given double. Rejects NaN/infinity.
Rational rational_from_double(double value);

}  // namespace csf
