#pragma once

#include "upsolve/basis.hpp"
#include "upsolve/polynomial.hpp"
#include "upsolve/roots.hpp"

#include <optional>
#include <vector>

namespace upsolve {

/// sigma + mu * theta
struct AffineScalar {
  Rational sigma = 0;
  Rational mu = 0;

  Rational operator()(const Rational& theta) const { return sigma + mu * theta; }
  Poly poly() const { return Poly::affine(sigma, mu); }
  friend bool operator==(const AffineScalar&, const AffineScalar&) = default;
};

/// Dense matrix with entries affine in theta, stored as sigma + theta * mu.
class ParamMatrix {
 public:
  ParamMatrix() = default;
  ParamMatrix(Eigen::Index rows, Eigen::Index cols)
      : sigma_(RationalMatrix::Zero(rows, cols)), mu_(RationalMatrix::Zero(rows, cols)) {}
  ParamMatrix(RationalMatrix sigma, RationalMatrix mu);

  static ParamMatrix constant(const RationalMatrix& m) {
    return ParamMatrix(m, RationalMatrix::Zero(m.rows(), m.cols()));
  }
  static ParamMatrix identity(Eigen::Index n) { return constant(RationalMatrix::Identity(n, n)); }

  Eigen::Index rows() const { return sigma_.rows(); }
  Eigen::Index cols() const { return sigma_.cols(); }

  AffineScalar operator()(Eigen::Index i, Eigen::Index j) const { return {sigma_(i, j), mu_(i, j)}; }
  void set(Eigen::Index i, Eigen::Index j, const AffineScalar& v) {
    sigma_(i, j) = v.sigma;
    mu_(i, j) = v.mu;
  }

  const RationalMatrix& sigma() const { return sigma_; }
  const RationalMatrix& mu() const { return mu_; }

  RationalMatrix at(const Rational& theta) const { return sigma_ + theta * mu_; }
  Poly entry(Eigen::Index i, Eigen::Index j) const { return Poly::affine(sigma_(i, j), mu_(i, j)); }

  ParamMatrix transpose() const { return ParamMatrix(sigma_.transpose(), mu_.transpose()); }
  ParamMatrix operator-() const { return ParamMatrix(-sigma_, -mu_); }
  bool is_constant() const { return (mu_.array() == Rational(0)).all(); }

  friend bool operator==(const ParamMatrix& a, const ParamMatrix& b) {
    return a.rows() == b.rows() && a.cols() == b.cols() && a.sigma_ == b.sigma_ && a.mu_ == b.mu_;
  }

 private:
  RationalMatrix sigma_;
  RationalMatrix mu_;
};

/// Determinant and Cramer numerators of G(theta)_B for one complementary basis.
struct BasisPolynomials {
  Poly det;                   // d(theta) = det(G_B)
  std::vector<Poly> numerators;  // v_i = (Adj(G_B) q)_i, by pair index
  int sign = 1;               // s_B, sign of d over Theta
};

/// Columns of G(theta) = [I | -M(theta)] selected by the basis, in pair order.
ParamMatrix basis_columns(const ParamMatrix& M, const ComplementaryBasis& basis);

/// Exact determinant by fraction-free (Bareiss) elimination over Z[theta].
Poly param_determinant(const ParamMatrix& A);

/// v_i = det(Gb with column i replaced by q), so that Gb * v = det(Gb) * q.
std::vector<Poly> cramer_numerators(const ParamMatrix& Gb, const ParamMatrix& q);

/// True iff sum_j Gb_ij v_j - d q_i is the zero polynomial for every row.
bool cramer_identity_holds(const ParamMatrix& Gb, const std::vector<Poly>& v, const Poly& d,
                           const ParamMatrix& q);

/// Sign of d at theta_star; throws DegenerateBasisError if d(theta_star) = 0.
int det_sign(const Poly& d, const Rational& theta_star);

class DegenerateBasisError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DetValidation {
  bool ok = true;
  std::optional<IsolatedRoot> offending;  // a root of d inside [lo, hi]
};

DetValidation validate_det_nonvanishing(const Poly& d, const Rational& lo, const Rational& hi);

/// Determinant and numerators for `basis`, reduced to the principal block of
/// -M on the z-selected pairs. Equivalent to composing basis_columns,
/// param_determinant and cramer_numerators on the full G_B.
BasisPolynomials reduced_basis_polynomials(const ParamMatrix& M, const ParamMatrix& q,
                                           const ComplementaryBasis& basis);

}  // namespace upsolve
