#include "dualmeet/rational.hpp"

#include <cctype>
#include <cmath>
#include <cstdint>
#include <string>

namespace dualmeet {
namespace {

BigInt pow10(int exponent) {
  BigInt result = 1;
  for (int i = 0; i < exponent; ++i) result *= 10;
  return result;
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

Rational parse_decimal(std::string_view text, std::string_view original) {
  auto fail = [&] {
    return InvalidInput("not a number: '" + std::string(original) + "'");
  };
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }

  int exponent = 0;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_text = text.substr(e + 1);
    text = text.substr(0, e);
    bool exp_negative = false;
    if (!exp_text.empty() && (exp_text.front() == '-' || exp_text.front() == '+')) {
      exp_negative = exp_text.front() == '-';
      exp_text.remove_prefix(1);
    }
    if (!all_digits(exp_text) || exp_text.size() > 6) throw fail();
    exponent = std::stoi(std::string(exp_text));
    if (exp_negative) exponent = -exponent;
  }

  std::string digits;
  int fraction_digits = 0;
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view whole = text.substr(0, dot);
    std::string_view frac = text.substr(dot + 1);
    if (whole.empty() && frac.empty()) throw fail();
    if ((!whole.empty() && !all_digits(whole)) || (!frac.empty() && !all_digits(frac))) throw fail();
    digits = std::string(whole) + std::string(frac);
    fraction_digits = static_cast<int>(frac.size());
  } else {
    if (!all_digits(text)) throw fail();
    digits = std::string(text);
  }

  // A leading 0 would make BigInt read the digits as octal.
  const auto first = digits.find_first_not_of('0');
  Rational value{first == std::string::npos ? BigInt(0) : BigInt(digits.substr(first))};
  int scale = exponent - fraction_digits;
  if (scale > 0) value *= pow10(scale);
  if (scale < 0) value /= pow10(-scale);
  return negative ? Rational(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string_view original = text;
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw InvalidInput("empty number");

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Rational num = parse_decimal(text.substr(0, slash), original);
    Rational den = parse_decimal(text.substr(slash + 1), original);
    if (den == 0) throw InvalidInput("zero denominator: '" + std::string(original) + "'");
    return num / den;
  }
  return parse_decimal(text, original);
}

Rational from_double(double x) {
  if (!std::isfinite(x)) throw InvalidInput("non-finite value");
  if (x == 0.0) return Rational(0);
  int exponent = 0;
  const double mantissa = std::frexp(x, &exponent);  // x = mantissa * 2^exponent, |mantissa| in [0.5, 1)
  const auto integral = static_cast<std::int64_t>(std::ldexp(mantissa, 53));
  exponent -= 53;
  Rational value{BigInt(integral)};
  BigInt two_pow = BigInt(1) << std::abs(exponent);
  if (exponent >= 0) return value * Rational(two_pow);
  return value / Rational(two_pow);
}

double to_double(const Rational& x) { return x.convert_to<double>(); }

std::string to_string(const Rational& x) {
  if (denominator(x) == 1) return numerator(x).str();
  return numerator(x).str() + "/" + denominator(x).str();
}

Rational round_half_even(const Rational& x, int places) {
  if (places < 0) throw InvalidInput("negative precision");
  const BigInt scale = pow10(places);
  const Rational scaled = x * scale;
  const BigInt num = numerator(scaled);
  const BigInt den = denominator(scaled);

  // Floor division for either sign.
  BigInt q = num / den;
  BigInt r = num % den;
  if (r < 0) {
    q -= 1;
    r += den;
  }
  const BigInt twice = 2 * r;
  if (twice > den || (twice == den && (q % 2) != 0)) q += 1;
  return Rational(q, scale);
}

std::string format_fixed(const Rational& x, int places) {
  const Rational rounded = round_half_even(x, places);
  BigInt units = numerator(Rational(rounded * pow10(places)));
  const bool negative = units < 0;
  if (negative) units = -units;

  std::string digits = units.str();
  if (places > 0) {
    if (static_cast<int>(digits.size()) <= places) {
      digits.insert(0, static_cast<std::size_t>(places + 1) - digits.size(), '0');
    }
    digits.insert(digits.size() - static_cast<std::size_t>(places), ".");
  }
  return negative ? "-" + digits : digits;
}

BigInt binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigInt result = 1;
  for (int i = 1; i <= k; ++i) {
    result *= n - k + i;
    result /= i;
  }
  return result;
}

Rational power(const Rational& base, int exponent) {
  if (exponent < 0) return Rational(1) / power(base, -exponent);
  Rational result = 1;
  Rational factor = base;
  while (exponent > 0) {
    if (exponent & 1) result *= factor;
    factor *= factor;
    exponent >>= 1;
  }
  return result;
}

}  // namespace dualmeet
