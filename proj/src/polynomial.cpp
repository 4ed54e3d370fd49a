#include "upsolve/polynomial.hpp"

#include <sstream>

namespace upsolve {

int sign_at(const IntPoly& p, const Rational& x) {
  const auto& c = p.coefficients();
  if (c.empty()) return 0;
  const Integer n = numerator_of(x);
  const Integer d = denominator_of(x);
  // sum c_i n^i d^(deg-i), same sign as p(x) because d > 0
  Integer acc = c.back();
  Integer dpow = d;
  for (std::size_t i = c.size() - 1; i-- > 0;) {
    acc = acc * n + c[i] * dpow;
    dpow *= d;
  }
  return acc.sign();
}

int sign_at(const Poly& p, const Rational& x) { return p(x).sign(); }

std::pair<Poly, Poly> divide(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  if (a.degree() < b.degree()) return {Poly{}, a};
  std::vector<Rational> rem = a.coefficients();
  const auto& bc = b.coefficients();
  const int db = b.degree();
  std::vector<Rational> quot(static_cast<std::size_t>(a.degree() - db + 1), Rational(0));
  const Rational inv_lead = Rational(1) / b.leading();
  for (int k = a.degree() - db; k >= 0; --k) {
    const Rational f = rem[static_cast<std::size_t>(k + db)] * inv_lead;
    quot[static_cast<std::size_t>(k)] = f;
    if (f == 0) continue;
    for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(k + j)] -= f * bc[static_cast<std::size_t>(j)];
  }
  rem.resize(static_cast<std::size_t>(db));
  return {Poly(std::move(quot)), Poly(std::move(rem))};
}

IntPoly exact_divide(const IntPoly& a, const IntPoly& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  if (a.is_zero()) return {};
  if (a.degree() < b.degree()) throw std::domain_error("exact_divide: divisor does not divide");
  std::vector<Integer> rem = a.coefficients();
  const auto& bc = b.coefficients();
  const int db = b.degree();
  const Integer& lead = b.leading();
  std::vector<Integer> quot(static_cast<std::size_t>(a.degree() - db + 1), Integer(0));
  for (int k = a.degree() - db; k >= 0; --k) {
    const Integer& top = rem[static_cast<std::size_t>(k + db)];
    if (top == 0) continue;
    Integer f = top / lead;
    if (f * lead != top) throw std::domain_error("exact_divide: inexact coefficient division");
    quot[static_cast<std::size_t>(k)] = f;
    for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(k + j)] -= f * bc[static_cast<std::size_t>(j)];
  }
  for (int j = 0; j < db; ++j) {
    if (rem[static_cast<std::size_t>(j)] != 0) throw std::domain_error("exact_divide: nonzero remainder");
  }
  return IntPoly(std::move(quot));
}

Poly monic(const Poly& p) {
  if (p.is_zero()) return p;
  return p * (Rational(1) / p.leading());
}

Poly gcd(const Poly& a, const Poly& b) {
  if (a.is_zero() && b.is_zero()) throw std::invalid_argument("gcd of two zero polynomials");
  // Euclid on primitive integer representatives keeps coefficient size in check.
  Poly x = to_rational(primitive_part(a));
  Poly y = to_rational(primitive_part(b));
  while (!y.is_zero()) {
    Poly r = divide(x, y).second;
    x = std::move(y);
    y = r.is_zero() ? Poly{} : to_rational(primitive_part(r));
  }
  return monic(x);
}

Integer content(const IntPoly& p) {
  Integer g = 0;
  for (const auto& c : p.coefficients()) {
    g = boost::multiprecision::gcd(g, c);
    if (g == 1) break;
  }
  return g;
}

IntPoly primitive_part(const Poly& p) {
  if (p.is_zero()) return {};
  Integer l = 1;
  for (const auto& c : p.coefficients()) l = boost::multiprecision::lcm(l, denominator_of(c));
  std::vector<Integer> ic;
  ic.reserve(p.coefficients().size());
  for (const auto& c : p.coefficients()) ic.push_back(numerator_of(c) * (l / denominator_of(c)));
  IntPoly q(std::move(ic));
  const Integer g = content(q);
  if (g == 1) return q;
  std::vector<Integer> out = q.coefficients();
  for (auto& c : out) c /= g;
  return IntPoly(std::move(out));
}

Poly to_rational(const IntPoly& p) {
  std::vector<Rational> c;
  c.reserve(p.coefficients().size());
  for (const auto& x : p.coefficients()) c.emplace_back(x);
  return Poly(std::move(c));
}

std::vector<std::pair<Poly, int>> square_free_decomposition(const Poly& p) {
  if (p.degree() < 1) throw std::invalid_argument("square_free_decomposition needs a nonconstant polynomial");
  std::vector<std::pair<Poly, int>> out;
  const Poly f = monic(p);
  const Poly df = derivative(f);
  Poly a = gcd(f, df);
  Poly b = divide(f, a).first;
  Poly c = divide(df, a).first;
  Poly d = c - derivative(b);
  int k = 1;
  while (b.degree() >= 1) {
    Poly g = gcd(b, d);
    if (g.degree() >= 1) out.emplace_back(g, k);
    b = divide(b, g).first;
    c = divide(d, g).first;
    d = c - derivative(b);
    ++k;
  }
  return out;
}

Poly square_free_part(const Poly& p) {
  if (p.degree() < 1) return Poly::constant(1);
  return monic(divide(p, gcd(p, derivative(p))).first);
}

std::string to_string(const Poly& p, const std::string& var) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  const auto& c = p.coefficients();
  for (std::size_t i = c.size(); i-- > 0;) {
    if (c[i] == 0) continue;
    Rational v = c[i];
    if (first) {
      if (v.sign() < 0) os << "-";
    } else {
      os << (v.sign() < 0 ? " - " : " + ");
    }
    v = abs(v);
    if (i == 0) {
      os << v.str();
    } else {
      if (v != 1) os << v.str() << "*";
      os << var;
      if (i > 1) os << "^" << i;
    }
    first = false;
  }
  return os.str();
}

}  // namespace upsolve
