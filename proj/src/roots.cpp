#include "upsolve/roots.hpp"

#include <functional>
#include <stdexcept>

namespace upsolve {

namespace {

IntPoly linear_through(const Rational& r) {
  // den*t - num
  return IntPoly{Integer(-numerator_of(r)), denominator_of(r)};
}

unsigned bit_length(const Integer& x) {
  Integer a = abs(x);
  return a == 0 ? 0u : static_cast<unsigned>(boost::multiprecision::msb(a)) + 1u;
}

}  // namespace

// ---------------------------------------------------------------------------
// Sturm sequences

SturmSequence::SturmSequence(const Poly& squarefree) {
  if (squarefree.is_zero()) throw std::invalid_argument("Sturm sequence of zero polynomial");
  Poly a = to_rational(primitive_part(squarefree));
  seq_.push_back(primitive_part(a));
  if (a.degree() < 1) return;
  Poly b = to_rational(primitive_part(derivative(a)));
  seq_.push_back(primitive_part(b));
  while (b.degree() >= 1) {
    Poly r = divide(a, b).second;
    if (r.is_zero()) break;  // only when the input was not square-free
    Poly next = to_rational(primitive_part(-r));
    seq_.push_back(primitive_part(next));
    a = std::move(b);
    b = std::move(next);
  }
}

int SturmSequence::variations(const Rational& x) const {
  int changes = 0;
  int last = 0;
  for (const auto& p : seq_) {
    const int s = sign_at(p, x);
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

int SturmSequence::variations_at_infinity(bool positive) const {
  int changes = 0;
  int last = 0;
  for (const auto& p : seq_) {
    int s = p.leading().sign();
    if (!positive && (p.degree() % 2 == 1)) s = -s;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

int SturmSequence::count(const Rational& a, const Rational& b) const {
  if (a >= b) return 0;
  return variations(a) - variations(b);
}

int SturmSequence::count_closed(const Rational& a, const Rational& b) const {
  if (a > b) return 0;
  return count(a, b) + (sign_at(seq_.front(), a) == 0 ? 1 : 0);
}

int SturmSequence::count_all() const { return variations_at_infinity(false) - variations_at_infinity(true); }

Rational cauchy_bound(const Poly& p) {
  if (p.degree() < 1) return Rational(1);
  Rational m = 0;
  const Rational lead = abs(p.leading());
  for (int i = 0; i < p.degree(); ++i) {
    Rational v = abs(p.coeff(static_cast<std::size_t>(i))) / lead;
    if (v > m) m = v;
  }
  return m + 1;
}

// ---------------------------------------------------------------------------
// Algebraic numbers

AlgebraicNumber::AlgebraicNumber(const Rational& value)
    : poly_(linear_through(value)), lo_(value), hi_(value), exact_(value) {}

AlgebraicNumber::AlgebraicNumber(const Poly& poly, const Rational& lo, const Rational& hi) {
  if (poly.is_zero()) throw std::invalid_argument("algebraic number of zero polynomial");
  *this = from_squarefree(primitive_part(square_free_part(poly)), lo, hi);
}

AlgebraicNumber AlgebraicNumber::from_squarefree(IntPoly f, const Rational& lo, const Rational& hi) {
  if (lo > hi) throw std::invalid_argument("algebraic number bracket with lo > hi");
  if (f.degree() < 1) throw std::invalid_argument("algebraic number of constant polynomial");
  if (lo == hi) {
    if (sign_at(f, lo) != 0) throw std::invalid_argument("degenerate bracket is not a root");
    return AlgebraicNumber(lo);
  }
  const int slo = sign_at(f, lo);
  const int shi = sign_at(f, hi);
  if (slo == 0) return AlgebraicNumber(lo);
  if (shi == 0) return AlgebraicNumber(hi);
  if (slo == shi) throw std::invalid_argument("bracket does not isolate a root (no sign change)");
  if (f.degree() == 1) return AlgebraicNumber(Rational(-f.coeff(0), f.coeff(1)));
  AlgebraicNumber out;
  out.poly_ = std::move(f);
  out.lo_ = lo;
  out.hi_ = hi;
  out.exact_.reset();
  out.sign_lo_ = slo;
  return out;
}

void AlgebraicNumber::bisect() {
  if (exact_) return;
  Rational m = (lo_ + hi_) / 2;
  const int s = sign_at(poly_, m);
  if (s == 0) {
    *this = AlgebraicNumber(m);
  } else if (s == sign_lo_) {
    lo_ = std::move(m);
  } else {
    hi_ = std::move(m);
  }
}

void AlgebraicNumber::refine(const Rational& eps) {
  if (eps.sign() <= 0) throw std::invalid_argument("refine: eps must be positive");
  while (!exact_ && hi_ - lo_ > eps) bisect();
}

std::strong_ordering AlgebraicNumber::compare(const Rational& x) const {
  if (exact_) return upsolve::compare(*exact_, x);
  if (hi_ <= x) return std::strong_ordering::less;
  if (lo_ >= x) return std::strong_ordering::greater;
  const int s = sign_at(poly_, x);
  if (s == 0) return std::strong_ordering::equal;
  // same sign as at lo: the root lies in (x, hi)
  return s == sign_lo_ ? std::strong_ordering::greater : std::strong_ordering::less;
}

namespace {

constexpr int kSeparationBudget = 64;

bool brackets_apart(const AlgebraicNumber& a, const AlgebraicNumber& b, std::strong_ordering& out) {
  if (a.hi() <= b.lo()) {
    out = std::strong_ordering::less;
    return true;
  }
  if (b.hi() <= a.lo()) {
    out = std::strong_ordering::greater;
    return true;
  }
  return false;
}

}  // namespace

std::strong_ordering compare_algebraic(const AlgebraicNumber& a_in, const AlgebraicNumber& b_in) {
  if (a_in.is_rational()) {
    const auto c = b_in.compare(a_in.rational());
    if (c == std::strong_ordering::less) return std::strong_ordering::greater;
    if (c == std::strong_ordering::greater) return std::strong_ordering::less;
    return c;
  }
  if (b_in.is_rational()) return a_in.compare(b_in.rational());

  AlgebraicNumber a = a_in;
  AlgebraicNumber b = b_in;
  std::strong_ordering out = std::strong_ordering::equal;
  bool gcd_checked = false;
  for (int step = 0;; ++step) {
    if (a.is_rational() || b.is_rational()) return compare_algebraic(a, b);
    if (brackets_apart(a, b, out)) return out;
    if (step >= kSeparationBudget && !gcd_checked) {
      gcd_checked = true;
      Poly g = gcd(to_rational(a.poly()), to_rational(b.poly()));
      if (g.degree() >= 1) {
        const Rational lo = std::max(a.lo(), b.lo());
        const Rational hi = std::min(a.hi(), b.hi());
        if (SturmSequence(g).count_closed(lo, hi) > 0) return std::strong_ordering::equal;
      }
    }
    if (a.width() >= b.width()) {
      a.bisect();
    } else {
      b.bisect();
    }
  }
}

std::strong_ordering compare_algebraic(const Poly& pa, const IsolatedRoot& ra, const Poly& pb,
                                       const IsolatedRoot& rb) {
  AlgebraicNumber a = ra.exact ? AlgebraicNumber(*ra.exact) : AlgebraicNumber(pa, ra.lo, ra.hi);
  AlgebraicNumber b = rb.exact ? AlgebraicNumber(*rb.exact) : AlgebraicNumber(pb, rb.lo, rb.hi);
  return compare_algebraic(a, b);
}

// ---------------------------------------------------------------------------
// Isolation

namespace {

struct Bracket {
  Rational lo, hi;
  std::optional<Rational> exact;
};

// Isolates the roots of a square-free polynomial in (a, b] given its Sturm sequence.
void isolate_into(const SturmSequence& sturm, const Rational& a, const Rational& b, int n,
                  std::vector<Bracket>& out) {
  if (n <= 0) return;
  const IntPoly& f = sturm.base();
  if (n == 1) {
    if (sign_at(f, b) == 0) {
      out.push_back({b, b, b});
      return;
    }
    Rational lo = a;
    Rational hi = b;
    while (sign_at(f, lo) == 0) {
      Rational m = (lo + hi) / 2;
      if (sturm.count(lo, m) == 1) {
        if (sign_at(f, m) == 0) {
          out.push_back({m, m, m});
          return;
        }
        hi = m;
      } else {
        lo = m;
      }
    }
    out.push_back({lo, hi, std::nullopt});
    return;
  }
  Rational m = (a + b) / 2;
  const int left = sturm.count(a, m);
  isolate_into(sturm, a, m, left, out);
  isolate_into(sturm, m, b, n - left, out);
}

void try_exact(AlgebraicNumber& v, const RootOptions& opts) {
  if (!opts.find_rational || v.is_rational()) return;
  const Integer& lead = v.poly().leading();
  if (bit_length(lead) > opts.max_rational_bits) return;
  // Distinct fractions with denominators <= |lead| are at least 1/lead^2 apart.
  const Rational sep = Rational(1) / Rational(lead * lead);
  while (!v.is_rational() && v.width() >= sep) v.bisect();
  if (v.is_rational()) return;
  Rational cand = simplest_between(v.lo(), v.hi());
  if (sign_at(v.poly(), cand) == 0) v = AlgebraicNumber(cand);
}

std::vector<RealRoot> roots_on(const Poly& p, const std::optional<std::pair<Rational, Rational>>& window,
                               const RootOptions& opts) {
  if (p.is_zero()) throw std::invalid_argument("real roots of the zero polynomial");
  if (p.degree() < 1) return {};
  const auto factors = square_free_decomposition(p);
  const Poly sqf = square_free_part(p);
  SturmSequence sturm(sqf);

  std::vector<Bracket> brackets;
  if (window) {
    const auto& [lo, hi] = *window;
    if (lo > hi) return {};
    if (sign_at(sturm.base(), lo) == 0) brackets.push_back({lo, lo, lo});
    isolate_into(sturm, lo, hi, sturm.count(lo, hi), brackets);
  } else {
    const Rational bound = cauchy_bound(sqf);
    isolate_into(sturm, -bound, bound, sturm.count_all(), brackets);
  }

  std::vector<IntPoly> factor_polys;
  factor_polys.reserve(factors.size());
  for (const auto& [f, k] : factors) factor_polys.push_back(primitive_part(f));

  std::vector<RealRoot> out;
  out.reserve(brackets.size());
  for (const auto& br : brackets) {
    std::size_t owner = factors.size();
    for (std::size_t i = 0; i < factors.size(); ++i) {
      const IntPoly& f = factor_polys[i];
      const bool hit = br.exact ? sign_at(f, *br.exact) == 0 : sign_at(f, br.lo) * sign_at(f, br.hi) < 0;
      if (hit) {
        owner = i;
        break;
      }
    }
    if (owner == factors.size()) throw std::logic_error("root isolation: no square-free factor owns a root");
    RealRoot r;
    r.multiplicity = factors[owner].second;
    r.value = br.exact ? AlgebraicNumber(*br.exact)
                       : AlgebraicNumber::from_squarefree(factor_polys[owner], br.lo, br.hi);
    try_exact(r.value, opts);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace

std::vector<RealRoot> real_roots(const Poly& p, const RootOptions& opts) { return roots_on(p, std::nullopt, opts); }

std::vector<RealRoot> real_roots_in(const Poly& p, const Rational& lo, const Rational& hi, const RootOptions& opts) {
  return roots_on(p, std::make_pair(lo, hi), opts);
}

std::vector<IsolatedRoot> isolate_real_roots(const Poly& p, const RootOptions& opts) {
  std::vector<IsolatedRoot> out;
  for (const auto& r : real_roots(p, opts)) {
    IsolatedRoot ir;
    ir.multiplicity = r.multiplicity;
    if (r.value.is_rational()) {
      ir.lo = ir.hi = r.value.rational();
      ir.exact = r.value.rational();
    } else {
      ir.lo = r.value.lo();
      ir.hi = r.value.hi();
    }
    out.push_back(std::move(ir));
  }
  return out;
}

IsolatedRoot refine_root(const Poly& p, const IsolatedRoot& r, const Rational& eps) {
  if (r.exact) return r;
  AlgebraicNumber v(p, r.lo, r.hi);
  v.refine(eps);
  IsolatedRoot out;
  out.multiplicity = r.multiplicity;
  if (v.is_rational()) {
    out.lo = out.hi = v.rational();
    out.exact = v.rational();
  } else {
    out.lo = v.lo();
    out.hi = v.hi();
  }
  return out;
}

}  // namespace upsolve
