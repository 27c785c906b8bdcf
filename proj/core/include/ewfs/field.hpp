#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace ewfs {

/// Arbitrary-precision rational, always kept canonical (lowest terms, positive
/// denominator).
using Rational = mpq_class;

/// Arithmetic used by a solve. Never mixed inside one computation.
enum class Mode { rational, floating };

inline constexpr double kDefaultTolerance = 1e-9;

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses "p/q", "p", or a plain decimal such as "-0.125" into an exact
/// rational. Throws ParseError on anything else (including a zero denominator).
Rational parse_rational(std::string_view text);

/// Canonical "p/q" text, or "p" for integers.
std::string to_string(const Rational& value);

std::string mode_name(Mode mode);
Mode parse_mode(std::string_view text);

/// Best rational approximation with denominator at most `max_denominator`
/// (continued-fraction convergents and semiconvergents).
Rational approximate_rational(double value, std::uint64_t max_denominator);

template <class T>
struct NumTraits;

template <>
struct NumTraits<Rational> {
  static constexpr Mode mode = Mode::rational;
  static constexpr bool exact = true;

  static int sign(const Rational& v, double /*tol*/) { return sgn(v); }
  static bool is_zero(const Rational& v, double /*tol*/) { return sgn(v) == 0; }
  static Rational from_rational(const Rational& r) { return r; }
  static Rational from_int(long v) { return Rational(v); }
  static double to_double(const Rational& v) { return v.get_d(); }
  static Rational abs(const Rational& v) { return ::abs(v); }
  static std::string name() { return "rational"; }
};

template <>
struct NumTraits<double> {
  static constexpr Mode mode = Mode::floating;
  static constexpr bool exact = false;

  static int sign(double v, double tol) {
    if (v > tol) return 1;
    if (v < -tol) return -1;
    return 0;
  }
  static bool is_zero(double v, double tol) { return std::fabs(v) <= tol; }
  static double from_rational(const Rational& r) { return r.get_d(); }
  static double from_int(long v) { return static_cast<double>(v); }
  static double to_double(double v) { return v; }
  static double abs(double v) { return std::fabs(v); }
  static std::string name() { return "float"; }
};

template <class T>
concept Field = requires { NumTraits<T>::mode; };

}  // namespace ewfs
