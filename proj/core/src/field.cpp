#include "ewfs/field.hpp"

#include <cctype>
#include <limits>

namespace ewfs {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

bool signed_integer(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  return all_digits(s);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (s.empty()) throw ParseError("empty rational literal");

  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    std::string_view num = s.substr(0, slash);
    std::string_view den = s.substr(slash + 1);
    if (!signed_integer(num) || !all_digits(den)) {
      throw ParseError("malformed rational literal '" + std::string(text) + "'");
    }
    mpz_class n(std::string(num.front() == '+' ? num.substr(1) : num), 10);
    mpz_class d(std::string(den), 10);
    if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    Rational r(n, d);
    r.canonicalize();
    return r;
  }

  bool negative = false;
  if (s.front() == '-' || s.front() == '+') {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  std::string_view whole = s;
  std::string_view frac;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    whole = s.substr(0, dot);
    frac = s.substr(dot + 1);
  }
  if ((whole.empty() && frac.empty()) || (!whole.empty() && !all_digits(whole)) ||
      (!frac.empty() && !all_digits(frac))) {
    throw ParseError("malformed rational literal '" + std::string(text) + "'");
  }
  std::string digits = std::string(whole) + std::string(frac);
  mpz_class n(digits.empty() ? std::string("0") : digits, 10);
  mpz_class d;
  mpz_ui_pow_ui(d.get_mpz_t(), 10, frac.size());
  Rational r(n, d);
  r.canonicalize();
  return negative ? Rational(-r) : r;
}

std::string to_string(const Rational& value) {
  Rational r(value);
  r.canonicalize();
  return r.get_str();
}

std::string mode_name(Mode mode) { return mode == Mode::rational ? "rational" : "float"; }

Mode parse_mode(std::string_view text) {
  if (text == "rational") return Mode::rational;
  if (text == "float") return Mode::floating;
  throw ParseError("unknown mode '" + std::string(text) + "' (expected rational|float)");
}

Rational approximate_rational(double value, std::uint64_t max_denominator) {
  if (!std::isfinite(value)) throw ParseError("cannot rationalize a non-finite value");
  if (max_denominator == 0) throw std::invalid_argument("max_denominator must be positive");

  // Work on the exact binary value of the double so the convergents are exact.
  Rational x(value);
  mpz_class p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  Rational rest = x;
  const mpz_class limit(std::to_string(max_denominator));
  for (;;) {
    mpz_class a;
    mpz_fdiv_q(a.get_mpz_t(), rest.get_num_mpz_t(), rest.get_den_mpz_t());
    mpz_class q2 = a * q1 + q0;
    if (q2 > limit) {
      // Largest semiconvergent that still fits, compared against the last
      // convergent.
      mpz_class k = (limit - q0) / q1;
      Rational semi(mpz_class(k * p1 + p0), mpz_class(k * q1 + q0));
      semi.canonicalize();
      Rational conv(p1, q1);
      conv.canonicalize();
      return abs(semi - x) < abs(conv - x) ? semi : conv;
    }
    mpz_class p2 = a * p1 + p0;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    Rational frac = rest - Rational(a);
    if (sgn(frac) == 0) break;
    rest = 1 / frac;
  }
  Rational r(p1, q1);
  r.canonicalize();
  return r;
}

}  // namespace ewfs
