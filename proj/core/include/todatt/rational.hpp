#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace todatt {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Parses "p", "p/q", "-p/q" or a finite decimal such as "-0.125" / "3e-2".
/// Throws std::invalid_argument on anything else.
Rational parse_rational(std::string_view text);

/// Best rational approximation of `x` with denominator <= max_den, accepted only
/// when it reproduces `x` to within `tol`. Throws std::invalid_argument when no
/// such rational exists (treated as "not representable").
Rational rational_from_double(double x, long long max_den = 1000000, double tol = 1e-12);

/// "p/q" in lowest terms, or "p" when q == 1.
std::string to_string(const Rational& r);

double to_double(const Rational& r);

}  // namespace todatt
