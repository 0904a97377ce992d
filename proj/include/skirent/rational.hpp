#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

namespace skirent {

/// Arbitrary-precision rational. All money amounts and DP values are exact.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Thrown when an internal consistency check fails (a bug, not bad input).
struct DefectError : std::logic_error {
  using std::logic_error::logic_error;
};

/// Day count standing for an infinite rental period (buying).
inline constexpr std::int64_t kForeverDays = std::numeric_limits<std::int64_t>::max();

inline bool is_forever(std::int64_t days) { return days == kForeverDays; }

inline std::int64_t add_days(std::int64_t a, std::int64_t b) {
  if (is_forever(a) || is_forever(b)) return kForeverDays;
  return a + b;
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline BigInt floor_div(const BigInt& num, const BigInt& den) {
  BigInt q = num / den;
  if ((num % den != 0) && ((num < 0) != (den < 0))) --q;
  return q;
}

inline BigInt floor_rat(const Rational& r) { return floor_div(numerator(r), denominator(r)); }

inline BigInt ceil_rat(const Rational& r) { return -floor_div(-numerator(r), denominator(r)); }

inline std::int64_t ceil_to_i64(const Rational& r) { return ceil_rat(r).convert_to<std::int64_t>(); }

inline Rational pow_rat(Rational base, std::int64_t exp) {
  if (exp < 0) return pow_rat(1 / base, -exp);
  Rational out(1);
  while (exp > 0) {
    if (exp & 1) out *= base;
    base *= base;
    exp >>= 1;
  }
  return out;
}

/// Smallest integer k >= 0 with base^k >= x. Requires base > 1 and x >= 1.
inline std::int64_t ceil_log(const Rational& base, const Rational& x) {
  if (base <= 1) throw std::invalid_argument("ceil_log: base must exceed 1");
  if (x < 1) throw std::invalid_argument("ceil_log: x must be >= 1");
  std::int64_t k = 0;
  Rational p(1);
  while (p < x) {
    p *= base;
    if (++k > 512) throw DefectError("ceil_log: exponent out of range");
  }
  return k;
}

namespace detail {

// cpp_int's string constructor treats a leading 0 as octal; always parse
// digit strings as decimal.
inline BigInt parse_decimal_int(std::string_view s) {
  bool negative = false;
  std::size_t pos = 0;
  if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) negative = s[pos++] == '-';
  if (pos == s.size()) throw std::invalid_argument("no digits");
  BigInt value(0);
  for (; pos < s.size(); ++pos) {
    if (s[pos] < '0' || s[pos] > '9') throw std::invalid_argument("bad digit");
    value = value * 10 + (s[pos] - '0');
  }
  return negative ? -value : value;
}

}  // namespace detail

/// Parses "p/q", integer, or decimal literals ("5/2", "4", "2.5", "-0.125") exactly.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("parse_rational: empty string");
  auto slash = s.find('/');
  try {
    if (slash != std::string::npos) {
      BigInt num = detail::parse_decimal_int(s.substr(0, slash));
      BigInt den = detail::parse_decimal_int(s.substr(slash + 1));
      if (den == 0) throw std::invalid_argument("zero denominator");
      return Rational(num, den);
    }
    auto dot = s.find('.');
    if (dot == std::string::npos) return Rational(detail::parse_decimal_int(s));
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    std::size_t frac_len = s.size() - dot - 1;
    BigInt den(1);
    for (std::size_t i = 0; i < frac_len; ++i) den *= 10;
    return Rational(detail::parse_decimal_int(digits), den);
  } catch (const std::exception&) {
    throw std::invalid_argument("parse_rational: cannot parse '" + s + "'");
  }
}

inline std::string format_rational(const Rational& r) {
  std::string s = numerator(r).str();
  if (denominator(r) != 1) s += "/" + denominator(r).str();
  return s;
}

}  // namespace skirent
