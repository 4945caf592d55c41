#include "csf/rational.hpp"

#include "csf/error.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>

namespace csf {

namespace {

using BigInt = boost::multiprecision::cpp_int;

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

BigInt pow10(std::size_t exponent) {
  BigInt result = 1;
  for (std::size_t i = 0; i < exponent; ++i) result *= 10;
  return result;
}

// cpp_int's string constructor reads a leading 0 as an octal prefix.
BigInt digits_to_bigint(std::string_view digits) {
  std::size_t first = digits.find_first_not_of('0');
  if (first == std::string_view::npos) return BigInt(0);
  return BigInt(std::string(digits.substr(first)));
}

}  // namespace

Rational rational_from_string(std::string_view text) {
  std::string_view s = text;
  if (s.empty()) fail(errc::syntax_error, "empty numeric literal");

  bool negative = false;
  if (s.front() == '+' || s.front() == '-') {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (s.empty()) fail(errc::syntax_error, "sign without digits in '" + std::string(text) + "'");

  // Explicit rational "p/q".
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    std::string_view num = s.substr(0, slash);
    std::string_view den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) {
      fail(errc::syntax_error, "malformed rational literal '" + std::string(text) + "'");
    }
    BigInt n = digits_to_bigint(num);
    BigInt d = digits_to_bigint(den);
    if (d == 0) fail(errc::syntax_error, "zero denominator in '" + std::string(text) + "'");
    Rational r(n, d);
    return negative ? -r : r;
  }

  // Decimal with optional fraction and exponent.
  std::string_view mantissa = s;
  long long exp10 = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    mantissa = s.substr(0, e);
    std::string_view exp_part = s.substr(e + 1);
    bool exp_neg = false;
    if (!exp_part.empty() && (exp_part.front() == '+' || exp_part.front() == '-')) {
      exp_neg = exp_part.front() == '-';
      exp_part.remove_prefix(1);
    }
    if (!all_digits(exp_part) || exp_part.size() > 4) {
      fail(errc::syntax_error, "malformed exponent in '" + std::string(text) + "'");
    }
    exp10 = std::atoll(std::string(exp_part).c_str());
    if (exp_neg) exp10 = -exp10;
  }

  std::string_view int_part = mantissa;
  std::string_view frac_part;
  if (auto dot = mantissa.find('.'); dot != std::string_view::npos) {
    int_part = mantissa.substr(0, dot);
    frac_part = mantissa.substr(dot + 1);
  }
  if (int_part.empty() && frac_part.empty()) {
    fail(errc::syntax_error, "no digits in '" + std::string(text) + "'");
  }
  if ((!int_part.empty() && !all_digits(int_part)) ||
      (!frac_part.empty() && !all_digits(frac_part))) {
    fail(errc::syntax_error, "malformed decimal literal '" + std::string(text) + "'");
  }

  std::string digits;
  digits.reserve(int_part.size() + frac_part.size());
  digits.append(int_part);
  digits.append(frac_part);
  BigInt numerator = digits_to_bigint(digits);
  BigInt denominator = pow10(frac_part.size());

  long long shift = exp10;
  if (shift > 0) {
    numerator *= pow10(static_cast<std::size_t>(shift));
  } else if (shift < 0) {
    denominator *= pow10(static_cast<std::size_t>(-shift));
  }
  Rational r(numerator, denominator);
  return negative ? -r : r;
}

std::string rational_to_string(const Rational& value) {
  std::string num = numerator(value).str();
  if (denominator(value) == 1) return num;
  return num + "/" + denominator(value).str();
}

double rational_to_double(const Rational& value) {
  return value.convert_to<double>();
}

Rational rational_from_double(double value) {
  if (!std::isfinite(value)) {
    fail(errc::invalid_argument, "non-finite value cannot become a rational");
  }
  return Rational(value);
}

}  // namespace csf
