#include "oracles.hpp"
#include "upsolve/reformulate.hpp"

#include <doctest.h>

using namespace upsolve;

namespace {

UpQpInstance scalar_qp(AffineScalar Q, AffineScalar c, AffineScalar A, AffineScalar b, Rational alpha,
                       Rational beta) {
  UpQpInstance qp;
  qp.n = 1;
  qp.m = 1;
  qp.Q = ParamMatrix(1, 1);
  qp.Q.set(0, 0, Q);
  qp.c = ParamMatrix(1, 1);
  qp.c.set(0, 0, c);
  qp.A = ParamMatrix(1, 1);
  qp.A.set(0, 0, A);
  qp.b = ParamMatrix(1, 1);
  qp.b.set(0, 0, b);
  qp.alpha = std::move(alpha);
  qp.beta = std::move(beta);
  return qp;
}

}  // namespace

TEST_CASE("KKT matrix for the one-variable QP") {
  const auto qp = scalar_qp({2, 0}, {-2, 0}, {1, 0}, {1, 0}, 0, 1);
  const auto [lcp, map] = qp_to_lcp(qp);
  RationalMatrix M(2, 2);
  M << 2, 1, -1, 0;
  CHECK(lcp.M.sigma() == M);
  CHECK(lcp.M.is_constant());
  CHECK(lcp.q.sigma()(0, 0) == -2);
  CHECK(lcp.q.sigma()(1, 0) == 1);
  CHECK(map.is_bijection());
  CHECK(map.lcp_index(QpRole::constraint, 0) == 1);

  const auto pieces = map_solution_back(solve_uplcp(lcp), map);
  REQUIRE(pieces.size() == 1);
  const auto v = pieces[0].at(Rational(1, 2));
  CHECK(v.x(0) == 1);
  CHECK(v.primal_slack(0) == 0);
  CHECK(v.dual_constraints(0) == 0);
  CHECK(v.dual_nonneg(0) == 0);
  CHECK(oracle::qp_brute_force(qp.Q.at(0), qp.c.at(0).col(0), qp.A.at(0), qp.b.at(0).col(0)) == Rational(-1));
}

TEST_CASE("LP: min -theta x s.t. x <= 1") {
  const auto lp = scalar_qp({0, 0}, {0, -1}, {1, 0}, {1, 0}, -1, 1);
  const auto [lcp, map] = lp_to_lcp(lp);
  CHECK((lcp.M.sigma().topLeftCorner(1, 1).array() == Rational(0)).all());
  const auto pieces = map_solution_back(solve_uplcp(lcp), map);
  REQUIRE(pieces.size() == 2);
  CHECK(pieces[0].interval.hi == Endpoint(Rational(0)));
  CHECK(pieces[0].at(Rational(-1, 2)).x(0) == 0);
  CHECK(pieces[1].at(Rational(1, 2)).x(0) == 1);
  CHECK(pieces[1].at(Rational(1, 2)).dual_constraints(0) == Rational(1, 2));
  CHECK(pieces[0].at(Rational(-1, 2)).dual_nonneg(0) == Rational(1, 2));
}

TEST_CASE("LP: min -x s.t. x <= theta") {
  const auto lp = scalar_qp({0, 0}, {-1, 0}, {1, 0}, {0, 1}, 0, 1);
  const auto [lcp, map] = lp_to_lcp(lp);
  const auto pieces = map_solution_back(solve_uplcp(lcp), map);
  REQUIRE(pieces.size() == 1);
  CHECK(pieces[0].x[0] * Poly{1} == Poly{0, 1} * pieces[0].denominator);
  CHECK(pieces[0].primal_slack[0].is_zero());
  CHECK(pieces[0].dual_constraints[0] == pieces[0].denominator);
}

TEST_CASE("LP with c >= 0 and b >= 0 stays at x = 0") {
  const auto lp = scalar_qp({0, 0}, {3, 0}, {1, 0}, {2, 0}, 0, 1);
  const auto pieces = map_solution_back(solve_uplcp(lp_to_lcp(lp).first), lp_to_lcp(lp).second);
  REQUIRE(pieces.size() == 1);
  CHECK(pieces[0].basis.key() == "ww");
  CHECK(pieces[0].x[0].is_zero());
  CHECK(pieces[0].primal_slack[0] == Rational(2) * pieces[0].denominator);
}

TEST_CASE("lp_to_lcp rejects a nonzero Q") {
  CHECK_THROWS_AS(lp_to_lcp(scalar_qp({0, 1}, {0, 0}, {1, 0}, {1, 0}, 0, 1)), std::invalid_argument);
}

TEST_CASE("no constraints: M = Q and q = c") {
  UpQpInstance qp;
  qp.n = 2;
  qp.m = 0;
  RationalMatrix Q(2, 2);
  Q << 2, 1, 1, 2;
  qp.Q = ParamMatrix::constant(Q);
  qp.c = ParamMatrix(2, 1);
  qp.c.set(0, 0, {-1, 1});
  qp.A = ParamMatrix(0, 2);
  qp.b = ParamMatrix(0, 1);
  const auto [lcp, map] = qp_to_lcp(qp);
  CHECK(lcp.M.sigma() == Q);
  CHECK(lcp.q == qp.c);
  CHECK(map.pairs.size() == 2);
}

TEST_CASE("validation of QP instances") {
  auto qp = scalar_qp({1, 0}, {0, 0}, {1, 0}, {1, 0}, 0, 1);
  qp.Q = ParamMatrix(2, 2);
  CHECK_THROWS_AS(qp_to_lcp(qp), std::invalid_argument);
  UpQpInstance asym;
  asym.n = 2;
  asym.m = 0;
  asym.Q = ParamMatrix(2, 2);
  asym.Q.set(0, 1, {1, 0});
  asym.c = ParamMatrix(2, 1);
  asym.A = ParamMatrix(0, 2);
  asym.b = ParamMatrix(0, 1);
  CHECK_THROWS_AS(asym.validate(), std::invalid_argument);
}

TEST_CASE("map_solution_back checks dimensions") {
  const auto qp = scalar_qp({2, 0}, {-2, 0}, {1, 0}, {1, 0}, 0, 1);
  const auto [lcp, map] = qp_to_lcp(qp);
  const Partition p = solve_uplcp(lcp);
  IndexMap wrong = map;
  wrong.pairs.pop_back();
  CHECK_THROWS_AS(map_solution_back(p, wrong), std::invalid_argument);
  IndexMap twice = map;
  twice.pairs[1] = twice.pairs[0];
  CHECK(!twice.is_bijection());
}

TEST_CASE("exact PSD test and the convexity diagnostic") {
  RationalMatrix S(3, 3);
  S << 2, -1, 0, -1, 2, -1, 0, -1, 2;
  CHECK(is_psd(S));
  S << 1, 1, 0, 1, 1, 0, 0, 0, 0;
  CHECK(is_psd(S));
  S << 1, 2, 0, 2, 1, 0, 0, 0, 1;
  CHECK(!is_psd(S));
  S << 0, 1, 0, 1, 0, 0, 0, 0, 1;
  CHECK(!is_psd(S));

  const auto convex = scalar_qp({1, 1}, {0, 0}, {1, 0}, {1, 0}, 0, 1);
  CHECK(convexity_diagnostics(convex).empty());
  const auto nonconvex = scalar_qp({0, 1}, {0, 0}, {1, 0}, {1, 0}, -1, 1);
  CHECK(convexity_diagnostics(nonconvex).size() == 2);
}

TEST_CASE("random convex QPs: KKT residuals and brute-force objective") {
  oracle::Draw d(31);
  for (int trial = 0; trial < 8; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(trial % 2);
    const std::size_t m = 1 + static_cast<std::size_t>(trial % 3);
    const UpQpInstance qp = oracle::random_convex_qp(d, n, m);
    const auto [lcp, map] = qp_to_lcp(qp);
    const auto pieces = map_solution_back(solve_uplcp(lcp), map);
    for (int k = 0; k <= 4; ++k) {
      const Rational t(k, 4);
      const QpSolutionPiece* piece = nullptr;
      for (const auto& pc : pieces) {
        if (pc.interval.lo.compare(t) != std::strong_ordering::greater &&
            pc.interval.hi.compare(t) != std::strong_ordering::less) {
          piece = &pc;
          break;
        }
      }
      REQUIRE(piece != nullptr);
      const auto v = piece->at(t);
      const RationalMatrix Q = qp.Q.at(t), A = qp.A.at(t);
      const RationalVector c = qp.c.at(t).col(0), b = qp.b.at(t).col(0);
      CHECK(Q * v.x + A.transpose() * v.dual_constraints + c == v.dual_nonneg);
      CHECK(b - A * v.x == v.primal_slack);
      CHECK(v.x.dot(v.dual_nonneg) == 0);
      CHECK(v.dual_constraints.dot(v.primal_slack) == 0);
      CHECK(qp.objective(t, v.x) == oracle::qp_brute_force(Q, c, A, b));
    }
  }
}
