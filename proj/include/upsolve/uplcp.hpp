#pragma once

#include "upsolve/instance.hpp"
#include "upsolve/lcp.hpp"
#include "upsolve/param_linalg.hpp"
#include "upsolve/roots.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace upsolve {

/// Interval endpoints are exact real algebraic numbers.
using Endpoint = AlgebraicNumber;

struct ParamInterval {
  Endpoint lo;
  Endpoint hi;
};

/// A basis together with the closed interval on which its basic solution
/// v_i(theta) / d(theta) solves the LCP.
struct IntervalPiece {
  ComplementaryBasis basis;
  ParamInterval interval;
  BasisPolynomials funcs;

  /// w(theta), z(theta) for theta in the piece (not checked).
  BasicSolution solution_at(const Rational& theta) const;
};

struct Partition {
  Rational alpha, beta;
  std::size_t h = 0;
  std::vector<IntervalPiece> pieces;  // sorted, covering [alpha, beta]

  /// Index of a piece containing theta (the left one at shared endpoints).
  std::optional<std::size_t> locate(const Rational& theta) const;
};

struct SolverOptions {
  unsigned workers = 1;
  Rational eps = Rational(1, 1000000000);  // output tolerance
  std::size_t pivot_limit = 0;             // 0: default_pivot_limit(h)
  std::size_t interval_budget = 100000;    // max intervals taken from the queue
  TableauUpdate tableau = TableauUpdate::automatic;
};

/// Assumption 1 (sufficiency) or 2 (feasibility) failed at run time.
class AssumptionViolation : public std::runtime_error {
 public:
  enum class Kind { sufficiency, feasibility };
  AssumptionViolation(Kind kind, const std::string& what, std::optional<Rational> theta = std::nullopt)
      : std::runtime_error(what), kind_(kind), theta_(std::move(theta)) {}
  Kind kind() const { return kind_; }
  const std::optional<Rational>& theta() const { return theta_; }

 private:
  Kind kind_;
  std::optional<Rational> theta_;
};

/// A solver invariant failed (a bug, or an exhausted iteration budget).
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct SolveReport {
  std::size_t intervals_processed = 0;
  std::size_t singletons_discarded = 0;
  std::size_t basis_computations = 0;
  std::map<std::string, std::size_t> computations_per_basis;
  std::vector<std::string> diagnostics;
};

/// Partitions [alpha, beta] into invariancy intervals.
Partition solve_uplcp(const UpLcpInstance& inst, const SolverOptions& opts = {}, SolveReport* report = nullptr);

/// Determinant, Cramer numerators and determinant sign for `basis`. Throws
/// AssumptionViolation if the determinant has a root in [alpha, beta].
BasisPolynomials basis_polynomials(const UpLcpInstance& inst, const ComplementaryBasis& basis,
                                   const Rational& theta_star);

/// Largest interval around theta_star, within [alpha_p, beta_p], on which
/// every s_B v_i stays nonnegative.
std::pair<Endpoint, Endpoint> get_extremes(const ComplementaryBasis& basis, const Rational& theta_star,
                                           const Endpoint& alpha_p, const Endpoint& beta_p,
                                           const BasisPolynomials& bp);

/// As above with the real roots of every numerator precomputed (roots outside
/// [alpha_p, beta_p] may be present and are ignored).
std::pair<Endpoint, Endpoint> get_extremes(const ComplementaryBasis& basis, const Rational& theta_star,
                                           const Endpoint& alpha_p, const Endpoint& beta_p,
                                           const BasisPolynomials& bp,
                                           const std::vector<std::vector<RealRoot>>& roots);

/// Exact rational strictly inside a positive-length interval.
Rational select_probe(const ParamInterval& interval);

/// Drops singletons, sorts, merges same-basis neighbours and checks that the
/// pieces cover [alpha, beta] exactly. Throws InternalError on a gap or overlap.
Partition normalize_partition(std::vector<IntervalPiece> pieces, const Rational& alpha, const Rational& beta,
                              std::size_t h);

/// Sign of the first nonvanishing derivative of g at x (0 if g is zero).
int direction_at(const Poly& g, const Rational& x);

/// Distinct odd-multiplicity real roots over all nonconstant numerators.
std::size_t odd_root_count(const BasisPolynomials& bp);

}  // namespace upsolve
