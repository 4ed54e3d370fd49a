#include "upsolve/param_linalg.hpp"

#include <stdexcept>

namespace upsolve {

namespace {

// Row-major square grid of integer polynomials.
struct IntPolyGrid {
  std::size_t n = 0;
  std::vector<IntPoly> cells;

  IntPoly& operator()(std::size_t i, std::size_t j) { return cells[i * n + j]; }
};

Integer row_denominator_lcm(const ParamMatrix& A, Eigen::Index i, const ParamMatrix* extra) {
  Integer l = 1;
  auto absorb = [&l](const Rational& x) { l = boost::multiprecision::lcm(l, denominator_of(x)); };
  for (Eigen::Index j = 0; j < A.cols(); ++j) {
    absorb(A.sigma()(i, j));
    absorb(A.mu()(i, j));
  }
  if (extra) {
    absorb(extra->sigma()(i, 0));
    absorb(extra->mu()(i, 0));
  }
  return l;
}

IntPoly scaled_entry(const Rational& sigma, const Rational& mu, const Integer& scale) {
  const Rational s = sigma * Rational(scale);
  const Rational m = mu * Rational(scale);
  return IntPoly{numerator_of(s), numerator_of(m)};
}

// Fraction-free Gaussian elimination; destroys the grid.
IntPoly bareiss(IntPolyGrid g) {
  const std::size_t n = g.n;
  if (n == 0) return IntPoly::constant(1);
  IntPoly prev = IntPoly::constant(1);
  bool negate = false;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && g(p, k).is_zero()) ++p;
    if (p == n) return {};
    if (p != k) {
      for (std::size_t j = k; j < n; ++j) std::swap(g(p, j), g(k, j));
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        IntPoly num = g(k, k) * g(i, j) - g(i, k) * g(k, j);
        g(i, j) = exact_divide(num, prev);
      }
    }
    prev = g(k, k);
  }
  IntPoly det = g(n - 1, n - 1);
  return negate ? IntPoly(-det) : det;
}

void require_square(const ParamMatrix& A, const char* what) {
  if (A.rows() != A.cols()) throw std::invalid_argument(std::string(what) + ": matrix must be square");
}

}  // namespace

ParamMatrix::ParamMatrix(RationalMatrix sigma, RationalMatrix mu) : sigma_(std::move(sigma)), mu_(std::move(mu)) {
  if (sigma_.rows() != mu_.rows() || sigma_.cols() != mu_.cols()) {
    throw std::invalid_argument("ParamMatrix: sigma and mu shapes differ");
  }
}

ParamMatrix basis_columns(const ParamMatrix& M, const ComplementaryBasis& basis) {
  require_square(M, "basis_columns");
  const auto h = static_cast<std::size_t>(M.rows());
  if (basis.size() != h) throw std::out_of_range("basis_columns: basis size does not match M");
  RationalMatrix sigma = RationalMatrix::Zero(M.rows(), M.cols());
  RationalMatrix mu = RationalMatrix::Zero(M.rows(), M.cols());
  for (std::size_t j = 0; j < h; ++j) {
    const auto c = static_cast<Eigen::Index>(j);
    if (basis.is_z(j)) {
      sigma.col(c) = -M.sigma().col(c);
      mu.col(c) = -M.mu().col(c);
    } else {
      sigma(c, c) = 1;
    }
  }
  return ParamMatrix(std::move(sigma), std::move(mu));
}

Poly param_determinant(const ParamMatrix& A) {
  require_square(A, "param_determinant");
  const auto n = static_cast<std::size_t>(A.rows());
  IntPolyGrid g{n, std::vector<IntPoly>(n * n)};
  Rational scale = 1;
  for (std::size_t i = 0; i < n; ++i) {
    const auto ri = static_cast<Eigen::Index>(i);
    const Integer l = row_denominator_lcm(A, ri, nullptr);
    scale *= Rational(l);
    for (std::size_t j = 0; j < n; ++j) {
      const auto cj = static_cast<Eigen::Index>(j);
      g(i, j) = scaled_entry(A.sigma()(ri, cj), A.mu()(ri, cj), l);
    }
  }
  return to_rational(bareiss(std::move(g))) * (Rational(1) / scale);
}

std::vector<Poly> cramer_numerators(const ParamMatrix& Gb, const ParamMatrix& q) {
  require_square(Gb, "cramer_numerators");
  if (q.rows() != Gb.rows() || q.cols() != 1) throw std::invalid_argument("cramer_numerators: q has wrong shape");
  const auto n = static_cast<std::size_t>(Gb.rows());
  IntPolyGrid base{n, std::vector<IntPoly>(n * n)};
  std::vector<IntPoly> rhs(n);
  Rational scale = 1;
  for (std::size_t i = 0; i < n; ++i) {
    const auto ri = static_cast<Eigen::Index>(i);
    const Integer l = row_denominator_lcm(Gb, ri, &q);
    scale *= Rational(l);
    for (std::size_t j = 0; j < n; ++j) {
      const auto cj = static_cast<Eigen::Index>(j);
      base(i, j) = scaled_entry(Gb.sigma()(ri, cj), Gb.mu()(ri, cj), l);
    }
    rhs[i] = scaled_entry(q.sigma()(ri, 0), q.mu()(ri, 0), l);
  }
  const Rational inv = Rational(1) / scale;
  std::vector<Poly> out;
  out.reserve(n);
  for (std::size_t col = 0; col < n; ++col) {
    IntPolyGrid g = base;
    for (std::size_t i = 0; i < n; ++i) g(i, col) = rhs[i];
    out.push_back(to_rational(bareiss(std::move(g))) * inv);
  }
  return out;
}

bool cramer_identity_holds(const ParamMatrix& Gb, const std::vector<Poly>& v, const Poly& d, const ParamMatrix& q) {
  if (static_cast<Eigen::Index>(v.size()) != Gb.cols()) return false;
  for (Eigen::Index i = 0; i < Gb.rows(); ++i) {
    Poly acc = -(d * q.entry(i, 0));
    for (Eigen::Index j = 0; j < Gb.cols(); ++j) acc += Gb.entry(i, j) * v[static_cast<std::size_t>(j)];
    if (!acc.is_zero()) return false;
  }
  return true;
}

int det_sign(const Poly& d, const Rational& theta_star) {
  const int s = evaluate(d, theta_star).sign();
  if (s == 0) throw DegenerateBasisError("basis determinant vanishes at theta* = " + theta_star.str());
  return s;
}

DetValidation validate_det_nonvanishing(const Poly& d, const Rational& lo, const Rational& hi) {
  if (d.is_zero()) throw std::invalid_argument("validate_det_nonvanishing: zero determinant");
  DetValidation out;
  if (d.is_constant()) return out;
  RootOptions opts;
  opts.find_rational = false;
  auto roots = real_roots_in(d, lo, hi, opts);
  if (roots.empty()) return out;
  out.ok = false;
  const auto& r = roots.front().value;
  IsolatedRoot ir;
  ir.multiplicity = roots.front().multiplicity;
  if (r.is_rational()) {
    ir.lo = ir.hi = r.rational();
    ir.exact = r.rational();
  } else {
    ir.lo = r.lo();
    ir.hi = r.hi();
  }
  out.offending = ir;
  return out;
}

BasisPolynomials reduced_basis_polynomials(const ParamMatrix& M, const ParamMatrix& q,
                                           const ComplementaryBasis& basis) {
  require_square(M, "reduced_basis_polynomials");
  const auto h = static_cast<std::size_t>(M.rows());
  if (basis.size() != h || q.rows() != M.rows()) throw std::invalid_argument("reduced_basis_polynomials: shape");

  std::vector<Eigen::Index> zs;
  for (std::size_t i = 0; i < h; ++i) {
    if (basis.is_z(i)) zs.push_back(static_cast<Eigen::Index>(i));
  }
  const auto k = static_cast<Eigen::Index>(zs.size());

  // G_B is, up to a simultaneous row/column permutation, [[I, -M_WZ], [0, -M_ZZ]].
  ParamMatrix block(k, k);
  ParamMatrix qz(k, 1);
  for (Eigen::Index a = 0; a < k; ++a) {
    for (Eigen::Index b = 0; b < k; ++b) {
      const AffineScalar m = M(zs[a], zs[b]);
      block.set(a, b, {-m.sigma, -m.mu});
    }
    qz.set(a, 0, q(zs[a], 0));
  }

  BasisPolynomials out;
  out.det = k == 0 ? Poly::constant(1) : param_determinant(block);
  std::vector<Poly> vz = k == 0 ? std::vector<Poly>{} : cramer_numerators(block, qz);

  out.numerators.assign(h, Poly{});
  for (Eigen::Index a = 0; a < k; ++a) out.numerators[static_cast<std::size_t>(zs[a])] = vz[static_cast<std::size_t>(a)];
  for (std::size_t i = 0; i < h; ++i) {
    if (basis.is_z(i)) continue;
    const auto ri = static_cast<Eigen::Index>(i);
    // w_i = q_i + sum_{l in Z} M_il z_l, scaled by d
    Poly v = out.det * q.entry(ri, 0);
    for (Eigen::Index a = 0; a < k; ++a) v += M.entry(ri, zs[a]) * vz[static_cast<std::size_t>(a)];
    out.numerators[i] = std::move(v);
  }
  return out;
}

}  // namespace upsolve
