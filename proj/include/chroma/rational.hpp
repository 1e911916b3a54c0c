#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace chroma {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Accepts "p/r", "k" or a plain decimal such as "0.25" or "-1.5e-2"; all
// forms are converted exactly.
Rational parse_rational(std::string_view text);

// Canonical "p/r" form ("p" when the denominator is 1).
std::string to_string(const Rational& value);

// The exact rational value of a finite double.
Rational exact_rational(double value);

double to_double(const Rational& value);

// ceil(value * n) for value >= 0.
std::uint64_t ceil_times(const Rational& value, std::uint64_t n);

}  // namespace chroma
