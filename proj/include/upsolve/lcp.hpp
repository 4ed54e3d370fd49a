#pragma once

#include "upsolve/basis.hpp"
#include "upsolve/instance.hpp"
#include "upsolve/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace upsolve {

/// Non-parametric LCP: w - M z = q, w'z = 0, w, z >= 0.
struct FixedLcp {
  RationalMatrix M;
  RationalVector q;

  std::size_t h() const { return static_cast<std::size_t>(q.size()); }
};

enum class LcpStatus { solved, infeasible, pivot_limit };

struct LcpOutcome {
  LcpStatus status = LcpStatus::infeasible;
  ComplementaryBasis basis;  // final basis (meaningful when solved)
  RationalVector w, z;       // set when solved
  std::size_t pivots = 0;
  std::vector<ComplementaryBasis> path;  // bases visited, starting with all-w
  std::string note;                      // reason for pivot_limit outcomes
};

enum class TableauUpdate {
  automatic,  // re-solve for h <= 8, rank-one pivots above
  resolve,    // recompute (G_B)^-1 [G | q] after every pivot
  rank_one,   // Gauss-Jordan pivot on the current tableau
};

/// M(theta*), q(theta*); throws std::out_of_range if theta* is outside [alpha, beta].
FixedLcp fix_theta(const UpLcpInstance& inst, const Rational& theta_star);

/// 10 * 2^min(h, 20)
std::size_t default_pivot_limit(std::size_t h);

/// Least-index criss-cross method started from the all-w basis.
LcpOutcome criss_cross(const FixedLcp& lcp, std::size_t pivot_limit,
                       TableauUpdate update = TableauUpdate::automatic);

struct BasicSolution {
  RationalVector w, z;
};

/// Solves G_B x = q for the basic variables (nonbasic ones are zero); no sign
/// requirement. Returns nullopt when G_B is singular.
std::optional<BasicSolution> basic_solution(const FixedLcp& lcp, const ComplementaryBasis& basis);

/// Exact Gauss-Jordan solve of A X = B; nullopt if A is singular.
std::optional<RationalMatrix> solve_exact(RationalMatrix A, RationalMatrix B);

/// w - Mz = q, w'z = 0, w >= 0, z >= 0, all exact.
bool satisfies_lcp(const FixedLcp& lcp, const RationalVector& w, const RationalVector& z);

}  // namespace upsolve
