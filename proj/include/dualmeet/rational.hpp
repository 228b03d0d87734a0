#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace dualmeet {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Raised for any caller-supplied value that violates a documented precondition.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when two independent computations of the same quantity disagree.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Accepts integers, decimals with optional exponent ("0.55", "-1e-3") and
// fractions ("2/3"). The result is exact.
Rational parse_rational(std::string_view text);

// Exact value of a finite double (every double is a dyadic rational).
Rational from_double(double x);

double to_double(const Rational& x);

// "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& x);

// Rounds to `places` decimal digits, ties to even.
Rational round_half_even(const Rational& x, int places);

// Fixed-point rendering of round_half_even(x, places). Never prints "-0".
std::string format_fixed(const Rational& x, int places);

BigInt binomial(int n, int k);

Rational power(const Rational& base, int exponent);

}  // namespace dualmeet
