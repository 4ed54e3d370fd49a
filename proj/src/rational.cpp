#include "upsolve/rational.hpp"

#include <cctype>

namespace upsolve {

namespace {

Integer pow10(unsigned k) {
  Integer r = 1;
  for (unsigned i = 0; i < k; ++i) r *= 10;
  return r;
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

// GMP reads a leading 0 as an octal prefix.
Integer decimal_integer(std::string_view digits) {
  while (digits.size() > 1 && digits.front() == '0') digits.remove_prefix(1);
  return Integer(std::string(digits.empty() ? "0" : digits));
}

Integer parse_integer(std::string_view s, std::string_view whole) {
  bool neg = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) throw NumberFormatError("invalid number: '" + std::string(whole) + "'");
  Integer v = decimal_integer(s);
  return neg ? Integer(-v) : v;
}

Integer floor_div(const Integer& a, const Integer& b) {
  // b > 0
  Integer q = a / b;
  if (a.sign() < 0 && q * b != a) q -= 1;
  return q;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw NumberFormatError("empty number");
  const std::string_view whole = text;

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Integer num = parse_integer(text.substr(0, slash), whole);
    std::string_view den_text = text.substr(slash + 1);
    if (!all_digits(den_text)) throw NumberFormatError("invalid denominator: '" + std::string(whole) + "'");
    Integer den = decimal_integer(den_text);
    if (den == 0) throw NumberFormatError("zero denominator: '" + std::string(whole) + "'");
    return Rational(num, den);
  }

  bool neg = false;
  if (text.front() == '-' || text.front() == '+') {
    neg = text.front() == '-';
    text.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    Integer ev = parse_integer(text.substr(e + 1), whole);
    if (abs(ev) > 100000) throw NumberFormatError("exponent out of range: '" + std::string(whole) + "'");
    exponent = ev.convert_to<long>();
    text = text.substr(0, e);
  }
  std::string digits;
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = text.substr(0, dot);
    std::string_view frac_part = text.substr(dot + 1);
    if ((int_part.empty() && frac_part.empty()) || (!int_part.empty() && !all_digits(int_part)) ||
        (!frac_part.empty() && !all_digits(frac_part))) {
      throw NumberFormatError("invalid number: '" + std::string(whole) + "'");
    }
    digits = std::string(int_part) + std::string(frac_part);
    exponent -= static_cast<long>(frac_part.size());
  } else {
    if (!all_digits(text)) throw NumberFormatError("invalid number: '" + std::string(whole) + "'");
    digits = std::string(text);
  }
  Rational value{decimal_integer(digits)};
  if (exponent > 0) value *= Rational(pow10(static_cast<unsigned>(exponent)));
  if (exponent < 0) value /= Rational(pow10(static_cast<unsigned>(-exponent)));
  return neg ? Rational(-value) : value;
}

std::string to_decimal(const Rational& x, unsigned digits) {
  const Integer scale = pow10(digits);
  Rational scaled = abs(x) * Rational(scale);
  // round half away from zero
  Integer n = numerator_of(scaled);
  Integer d = denominator_of(scaled);
  Integer q = floor_div(2 * n + d, 2 * d);
  std::string s = q.str();
  if (digits > 0) {
    if (s.size() <= digits) s.insert(0, digits + 1 - s.size(), '0');
    s.insert(s.size() - digits, ".");
  }
  if (x.sign() < 0 && q != 0) s.insert(0, "-");
  return s;
}

unsigned decimal_digits_for(const Rational& bound) {
  if (bound.sign() <= 0) throw std::invalid_argument("decimal_digits_for: bound must be positive");
  unsigned k = 0;
  Rational p = 1;
  while (p > bound) {
    p /= 10;
    ++k;
  }
  return k;
}

std::string to_string(const Rational& x) { return x.str(); }

Rational simplest_between(const Rational& lo, const Rational& hi) {
  if (lo > hi) return simplest_between(hi, lo);
  if (lo.sign() <= 0 && hi.sign() >= 0) return Rational(0);
  if (hi.sign() < 0) return Rational(-simplest_between(-hi, -lo));
  // Stern-Brocot descent via continued fractions, 0 < lo <= hi.
  Integer fl = floor_div(numerator_of(lo), denominator_of(lo));
  if (Rational(fl) == lo) return lo;
  if (Rational(fl + 1) <= hi) return Rational(fl + 1);
  // lo and hi share the integer part fl; recurse on reciprocals of the fractional parts.
  Rational a = lo - Rational(fl);
  Rational b = hi - Rational(fl);
  Rational inner = simplest_between(Rational(1) / b, Rational(1) / a);
  return Rational(fl) + Rational(1) / inner;
}

Rational pow2(long exponent) {
  Rational r = 1;
  const Rational two = 2;
  if (exponent >= 0) {
    for (long i = 0; i < exponent; ++i) r *= two;
  } else {
    for (long i = 0; i < -exponent; ++i) r /= two;
  }
  return r;
}

}  // namespace upsolve
