#include "ct2/scalar.hpp"

#include <cctype>

namespace ct2 {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

[[noreturn]] void bad(std::string_view text) {
  throw ValidationError("cannot parse number '" + std::string(text) + "'");
}

bool is_integer_literal(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+'))
    s.remove_prefix(1);
  return !s.empty() &&
         std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

// Base 10 always; the string constructor would read a leading 0 as octal.
Rational integer_rational(std::string_view s) {
  bool neg = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }
  while (s.size() > 1 && s.front() == '0')
    s.remove_prefix(1);
  const boost::multiprecision::mpz_int v{std::string(s)};
  return neg ? Rational(-v) : Rational(v);
}

} // namespace

double ScalarTraits<double>::parse(std::string_view text) {
  const auto s = trim(text);
  if (const auto slash = s.find('/'); slash != std::string_view::npos)
    return ScalarTraits<Rational>::to_double(ScalarTraits<Rational>::parse(s));
  double v = 0.0;
  const char *first = s.data();
  if (!s.empty() && s.front() == '+')
    ++first;
  auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
    bad(text);
  return v;
}

Rational ScalarTraits<Rational>::parse(std::string_view text) {
  const auto s = trim(text);
  if (s.empty())
    bad(text);
  if (const auto slash = s.find('/'); slash != std::string_view::npos) {
    const auto num = trim(s.substr(0, slash)), den = trim(s.substr(slash + 1));
    if (!is_integer_literal(num) || !is_integer_literal(den))
      bad(text);
    const Rational d = integer_rational(den);
    if (d == 0)
      bad(text);
    return integer_rational(num) / d;
  }
  if (is_integer_literal(s))
    return integer_rational(s);

  // Decimal with optional exponent: mantissa digits / 10^k * 10^e.
  std::string_view m = s;
  long long exp10 = 0;
  if (const auto e = m.find_first_of("eE"); e != std::string_view::npos) {
    const auto es = m.substr(e + 1);
    if (!is_integer_literal(es))
      bad(text);
    exp10 = std::stoll(std::string(es));
    m = m.substr(0, e);
  }
  std::string digits;
  bool neg = false;
  if (!m.empty() && (m.front() == '-' || m.front() == '+')) {
    neg = m.front() == '-';
    m.remove_prefix(1);
  }
  bool seen_dot = false;
  for (char c : m) {
    if (c == '.') {
      if (seen_dot)
        bad(text);
      seen_dot = true;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      if (seen_dot)
        --exp10;
    } else {
      bad(text);
    }
  }
  if (digits.empty())
    bad(text);
  Rational v = integer_rational(digits);
  const Rational ten(10);
  for (long long i = 0; i < exp10; ++i)
    v *= ten;
  for (long long i = 0; i > exp10; --i)
    v /= ten;
  return neg ? Rational(-v) : v;
}

} // namespace ct2
