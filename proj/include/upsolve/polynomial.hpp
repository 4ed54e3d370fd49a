#pragma once

#include "upsolve/rational.hpp"

#include <algorithm>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace upsolve {

/// Dense univariate polynomial over an exact coefficient ring.
///
/// Coefficient i multiplies theta^i. The zero polynomial has no stored
/// coefficients and degree -1; otherwise the leading coefficient is nonzero.
template <typename Scalar>
class Polynomial {
 public:
  using scalar_type = Scalar;

  Polynomial() = default;
  explicit Polynomial(std::vector<Scalar> coeffs) : c_(std::move(coeffs)) { trim(); }
  Polynomial(std::initializer_list<Scalar> coeffs) : c_(coeffs) { trim(); }

  static Polynomial constant(const Scalar& v) { return Polynomial(std::vector<Scalar>{v}); }
  static Polynomial monomial(const Scalar& v, std::size_t power) {
    std::vector<Scalar> c(power + 1, Scalar(0));
    c[power] = v;
    return Polynomial(std::move(c));
  }
  /// sigma + mu * theta
  static Polynomial affine(const Scalar& sigma, const Scalar& mu) {
    return Polynomial(std::vector<Scalar>{sigma, mu});
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  const Scalar& leading() const {
    if (c_.empty()) throw std::domain_error("leading coefficient of zero polynomial");
    return c_.back();
  }
  Scalar coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Scalar(0); }
  const std::vector<Scalar>& coefficients() const { return c_; }

  template <typename X>
  X operator()(const X& x) const {
    X acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + X(*it);
    return acc;
  }

  Polynomial& operator+=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Scalar(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Scalar(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }
  Polynomial& operator*=(const Scalar& s) {
    if (s == 0) {
      c_.clear();
      return *this;
    }
    for (auto& x : c_) x *= s;
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator-(Polynomial a) {
    for (auto& x : a.c_) x = -x;
    return a;
  }
  friend Polynomial operator*(Polynomial a, const Scalar& s) { return a *= s; }
  friend Polynomial operator*(const Scalar& s, Polynomial a) { return a *= s; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Scalar> r(a.c_.size() + b.c_.size() - 1, Scalar(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    }
    return Polynomial(std::move(r));
  }
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  std::vector<Scalar> c_;
};

using Poly = Polynomial<Rational>;
using IntPoly = Polynomial<Integer>;

template <typename Scalar>
Polynomial<Scalar> derivative(const Polynomial<Scalar>& p) {
  const auto& c = p.coefficients();
  if (c.size() <= 1) return {};
  std::vector<Scalar> d(c.size() - 1);
  for (std::size_t i = 1; i < c.size(); ++i) d[i - 1] = c[i] * Scalar(static_cast<long>(i));
  return Polynomial<Scalar>(std::move(d));
}

/// Exact value of p at x.
inline Rational evaluate(const Poly& p, const Rational& x) { return p(x); }

/// Sign of p(n/d) computed in integer arithmetic from the homogenized form.
int sign_at(const IntPoly& p, const Rational& x);
int sign_at(const Poly& p, const Rational& x);

/// Quotient and remainder of Euclidean division over the rationals.
std::pair<Poly, Poly> divide(const Poly& a, const Poly& b);

/// a / b where b is known to divide a exactly over the integers.
IntPoly exact_divide(const IntPoly& a, const IntPoly& b);

Poly monic(const Poly& p);

/// Monic greatest common divisor; throws std::invalid_argument if both are zero.
Poly gcd(const Poly& a, const Poly& b);

/// Positive integer multiple of p with coprime integer coefficients.
IntPoly primitive_part(const Poly& p);
Integer content(const IntPoly& p);
Poly to_rational(const IntPoly& p);

/// Yun's algorithm. Returns (f_k, k) with p = c * prod f_k^k, each f_k monic,
/// square-free and nonconstant, sorted by ascending k. Throws for constant p.
std::vector<std::pair<Poly, int>> square_free_decomposition(const Poly& p);

/// Monic square-free part (product of distinct irreducible factors).
Poly square_free_part(const Poly& p);

/// Human-readable form in theta, e.g. "-1/4*t^2 - 1/6*t + 1/3".
std::string to_string(const Poly& p, const std::string& var = "t");

}  // namespace upsolve
