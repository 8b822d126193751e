#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <charconv>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <string>
#include <string_view>
#include <system_error>

#include "ct2/errors.hpp"

namespace ct2 {

/// Arbitrary-precision rational. Expression templates are disabled so that
/// `auto` and generic code behave like they do for `double`.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

template <class T> struct ScalarTraits;

template <> struct ScalarTraits<double> {
  static constexpr bool exact = false;
  static constexpr const char *name = "float";

  static double fraction(std::int64_t num, std::int64_t den) {
    return static_cast<double>(num) / static_cast<double>(den);
  }
  static double to_double(double v) { return v; }
  static double abs(double v) { return std::abs(v); }

  /// Shortest decimal that round-trips.
  static std::string to_string(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
  }

  /// Accepts decimals and "p/q".
  static double parse(std::string_view text);
  static double from_double(double v) { return v; }
};

template <> struct ScalarTraits<Rational> {
  static constexpr bool exact = true;
  static constexpr const char *name = "rational";

  static Rational fraction(std::int64_t num, std::int64_t den) {
    return Rational(num) / Rational(den);
  }
  static double to_double(const Rational &v) { return v.convert_to<double>(); }
  static Rational abs(const Rational &v) { return boost::multiprecision::abs(v); }

  /// "p/q", or "p" for integers.
  static std::string to_string(const Rational &v) {
    std::string s = v.str();
    return s;
  }

  /// Accepts "p/q", integers and plain decimals ("0.25" -> 1/4), exactly.
  static Rational parse(std::string_view text);

  /// Converts through the shortest round-trip decimal, so 0.1 becomes 1/10
  /// rather than the binary expansion of the double.
  static Rational from_double(double v) {
    return parse(ScalarTraits<double>::to_string(v));
  }
};

template <class T>
concept Scalar = requires { ScalarTraits<T>::exact; };

template <Scalar T> T frac(std::int64_t num, std::int64_t den = 1) {
  return ScalarTraits<T>::fraction(num, den);
}

template <Scalar T> double to_double(const T &v) { return ScalarTraits<T>::to_double(v); }

template <Scalar T> T abs_value(const T &v) { return ScalarTraits<T>::abs(v); }

template <Scalar T> std::string to_string(const T &v) { return ScalarTraits<T>::to_string(v); }

template <Scalar T> T parse_scalar(std::string_view text) { return ScalarTraits<T>::parse(text); }

template <Scalar T> constexpr bool is_exact_v = ScalarTraits<T>::exact;

/// Converts between the two scalar realizations (rational -> double rounds).
template <Scalar To, Scalar From> To scalar_cast(const From &v) {
  if constexpr (std::same_as<To, From>) {
    return v;
  } else if constexpr (std::same_as<To, double>) {
    return ScalarTraits<From>::to_double(v);
  } else {
    return ScalarTraits<To>::from_double(v);
  }
}

/// `|v| <= tol` for floats, `v == 0` for rationals.
template <Scalar T> bool is_zero(const T &v, double tol) {
  if constexpr (is_exact_v<T>)
    return v == 0;
  else
    return std::abs(v) <= tol;
}

} // namespace ct2
