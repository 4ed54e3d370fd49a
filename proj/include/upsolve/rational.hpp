#pragma once

#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>

#include <Eigen/Core>

#include <compare>

#include <stdexcept>
#include <string>
#include <string_view>

namespace upsolve {

// GMP-backed exact scalars. Expression templates are disabled so that the
// types behave as plain values inside Eigen expressions and with `auto`.
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using RationalMatrix = MatrixX<Rational>;
using RationalVector = VectorX<Rational>;

/// Thrown when a numeric literal cannot be parsed.
class NumberFormatError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline int sign(const Rational& x) { return x.sign(); }
inline int sign(const Integer& x) { return x.sign(); }

inline std::strong_ordering compare(const Rational& a, const Rational& b) {
  const int c = a.compare(b);
  return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}
inline Integer numerator_of(const Rational& x) { return boost::multiprecision::numerator(x); }
inline Integer denominator_of(const Rational& x) { return boost::multiprecision::denominator(x); }

/// Parses "p", "p/q", or a decimal literal such as "-0.125" or "3.5e-2".
/// Decimal literals are converted exactly.
Rational parse_rational(std::string_view text);

/// Decimal rendering with `digits` fractional digits, rounded half away from zero.
std::string to_decimal(const Rational& x, unsigned digits);

/// Smallest k with 10^-k <= bound (bound > 0).
unsigned decimal_digits_for(const Rational& bound);

/// Canonical "p" or "p/q" string.
std::string to_string(const Rational& x);

/// The rational with the smallest denominator in the closed interval [lo, hi].
Rational simplest_between(const Rational& lo, const Rational& hi);

Rational pow2(long exponent);

}  // namespace upsolve
