#pragma once

#include "upsolve/polynomial.hpp"

#include <compare>
#include <optional>
#include <vector>

namespace upsolve {

/// A rational bracket holding exactly one distinct real root of some polynomial.
struct IsolatedRoot {
  Rational lo;
  Rational hi;
  int multiplicity = 1;
  std::optional<Rational> exact;  // set iff the root is known to be this rational; then lo == hi
};

/// Sturm sequence of a square-free polynomial, stored as primitive integer
/// polynomials (positive rescaling does not change sign variation counts).
class SturmSequence {
 public:
  explicit SturmSequence(const Poly& squarefree);

  /// Number of distinct real roots in the half-open interval (a, b].
  int count(const Rational& a, const Rational& b) const;
  /// Number of distinct real roots in [a, b].
  int count_closed(const Rational& a, const Rational& b) const;
  int count_all() const;

  const IntPoly& base() const { return seq_.front(); }

 private:
  int variations(const Rational& x) const;
  int variations_at_infinity(bool positive) const;

  std::vector<IntPoly> seq_;
};

/// Strict bound B with every real root of p inside (-B, B).
Rational cauchy_bound(const Poly& p);

/// A real algebraic number: a square-free integer polynomial together with an
/// isolating bracket (lo, hi) across which it changes sign, or an exact rational.
class AlgebraicNumber {
 public:
  AlgebraicNumber() : AlgebraicNumber(Rational(0)) {}
  AlgebraicNumber(const Rational& value);  // NOLINT(google-explicit-constructor)
  /// `poly` need not be square-free; its square-free part is stored. The closed
  /// bracket must contain exactly one distinct root of `poly`.
  AlgebraicNumber(const Poly& poly, const Rational& lo, const Rational& hi);
  /// As above, for a primitive polynomial already known to be square-free.
  static AlgebraicNumber from_squarefree(IntPoly f, const Rational& lo, const Rational& hi);

  bool is_rational() const { return exact_.has_value(); }
  const Rational& rational() const { return *exact_; }
  const IntPoly& poly() const { return poly_; }
  const Rational& lo() const { return lo_; }
  const Rational& hi() const { return hi_; }
  Rational width() const { return hi_ - lo_; }
  /// Midpoint of the bracket (the value itself when rational).
  Rational approximation() const { return exact_ ? *exact_ : (lo_ + hi_) / 2; }

  /// One bisection step.
  void bisect();
  /// Bisect until the bracket width is at most `eps` (eps > 0).
  void refine(const Rational& eps);
  AlgebraicNumber refined(const Rational& eps) const {
    AlgebraicNumber c = *this;
    c.refine(eps);
    return c;
  }

  /// Exact ordering against a rational, never refines.
  std::strong_ordering compare(const Rational& x) const;

  friend std::strong_ordering compare_algebraic(const AlgebraicNumber& a, const AlgebraicNumber& b);
  friend std::strong_ordering operator<=>(const AlgebraicNumber& a, const AlgebraicNumber& b) {
    return compare_algebraic(a, b);
  }
  friend bool operator==(const AlgebraicNumber& a, const AlgebraicNumber& b) {
    return compare_algebraic(a, b) == std::strong_ordering::equal;
  }

  /// Signs of poly() at the bracket ends (only meaningful when not rational).
  int sign_lo() const { return sign_lo_; }

 private:
  IntPoly poly_;
  Rational lo_, hi_;
  std::optional<Rational> exact_;
  int sign_lo_ = 0;
};

std::strong_ordering compare_algebraic(const AlgebraicNumber& a, const AlgebraicNumber& b);
/// Root-bracket overload: each pair is a polynomial and an isolated root of it.
std::strong_ordering compare_algebraic(const Poly& pa, const IsolatedRoot& ra, const Poly& pb,
                                       const IsolatedRoot& rb);

struct RootOptions {
  /// Detect rational roots exactly (bisect to below 1/lc^2, then test the
  /// simplest fraction in the bracket).
  bool find_rational = true;
  /// Skip rational detection when the leading coefficient exceeds this many bits.
  unsigned max_rational_bits = 256;
};

/// A distinct real root with its multiplicity; `value.poly()` is the
/// square-free factor of multiplicity `multiplicity`.
struct RealRoot {
  AlgebraicNumber value;
  int multiplicity = 1;
};

/// All distinct real roots, sorted, with multiplicities.
std::vector<RealRoot> real_roots(const Poly& p, const RootOptions& opts = {});
/// Distinct real roots inside the closed interval [lo, hi], sorted.
std::vector<RealRoot> real_roots_in(const Poly& p, const Rational& lo, const Rational& hi,
                                    const RootOptions& opts = {});

/// Bracket form of real_roots(); constant p gives an empty list.
std::vector<IsolatedRoot> isolate_real_roots(const Poly& p, const RootOptions& opts = {});

/// Narrows r to width <= eps by bisection on the square-free part of p.
IsolatedRoot refine_root(const Poly& p, const IsolatedRoot& r, const Rational& eps);

}  // namespace upsolve
