#pragma once

#include "upsolve/uplcp.hpp"

#include <string>
#include <vector>

namespace upsolve {

/// min 1/2 x'Q(theta)x + c(theta)'x  s.t.  A(theta)x <= b(theta), x >= 0.
struct UpQpInstance {
  std::size_t n = 0;
  std::size_t m = 0;
  ParamMatrix Q;  // n x n, symmetric in both sigma and mu
  ParamMatrix c;  // n x 1
  ParamMatrix A;  // m x n
  ParamMatrix b;  // m x 1
  Rational alpha = 0;
  Rational beta = 1;

  /// Throws std::invalid_argument on bad shapes, asymmetric Q, or alpha >= beta.
  void validate() const;
  bool is_lp() const;

  Rational objective(const Rational& theta, const RationalVector& x) const;

  friend bool operator==(const UpQpInstance&, const UpQpInstance&) = default;
};

enum class QpRole { primal, constraint };

/// LCP pair i is (u_j, x_j) for a primal variable or (s_k, lambda_k) for a
/// constraint; w holds u or s, z holds x or lambda.
struct IndexMap {
  std::size_t n = 0;
  std::size_t m = 0;
  std::vector<std::pair<QpRole, std::size_t>> pairs;

  std::size_t lcp_index(QpRole role, std::size_t k) const { return role == QpRole::primal ? k : n + k; }
  /// Every LCP pair has exactly one role and every role one pair.
  bool is_bijection() const;
};

std::pair<UpLcpInstance, IndexMap> qp_to_lcp(const UpQpInstance& qp);

/// As qp_to_lcp; throws std::invalid_argument if Q is not identically zero.
std::pair<UpLcpInstance, IndexMap> lp_to_lcp(const UpQpInstance& lp);

/// Every function is numerator / denominator.
struct QpSolutionPiece {
  ComplementaryBasis basis;
  ParamInterval interval;
  Poly denominator;
  std::vector<Poly> x;                 // n
  std::vector<Poly> primal_slack;      // m, s = b - Ax
  std::vector<Poly> dual_constraints;  // m, lambda
  std::vector<Poly> dual_nonneg;       // n, u = Qx + A'lambda + c

  struct Values {
    RationalVector x, primal_slack, dual_constraints, dual_nonneg;
  };
  Values at(const Rational& theta) const;
};

/// Throws std::invalid_argument when the partition and map disagree in size.
std::vector<QpSolutionPiece> map_solution_back(const Partition& partition, const IndexMap& map);

/// Samples Q(theta) at 5 points of Theta and reports every sample where an
/// exact LDL' factorization finds Q(theta) not positive semidefinite.
std::vector<std::string> convexity_diagnostics(const UpQpInstance& qp);

/// Exact positive semidefiniteness test for a symmetric rational matrix.
bool is_psd(RationalMatrix S);

}  // namespace upsolve
