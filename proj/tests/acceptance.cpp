// Acceptance suite: prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.
#include "oracles.hpp"
#include "upsolve/io.hpp"

#include <chrono>
#include <cmath>
#include <deque>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

using namespace upsolve;

namespace {

struct Result {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

// Partitions produced by every criterion, for the integrity check.
std::deque<std::pair<std::string, Partition>> g_partitions;

const Partition& keep(const std::string& tag, Partition p) {
  g_partitions.emplace_back(tag, std::move(p));
  return g_partitions.back().second;
}

UpLcpInstance reduced_example() {
  return parse_instance(R"(type lcp
h 2
theta -2 2
M 1 1 : 2
M 1 2 : -1 1/2
M 2 1 : 1 -1
M 2 2 : 3
q 1 : 1 -1
q 2 : -2 3/2
)")
      .lcp();
}

Poly P(std::initializer_list<Rational> c) { return Poly(std::vector<Rational>(c)); }

// value_i = num / den for each basic variable, by basis key.
struct Golden {
  std::vector<std::pair<Poly, Poly>> funcs;
};

std::map<std::string, Golden> golden_functions() {
  const Rational h(1, 2);
  return {
      {"wz", {{{P({Rational(1, 3), Rational(-1, 6), Rational(-1, 4)}), P({1})}, {P({Rational(2, 3), -h}), P({1})}}}},
      {"zw", {{{P({-h, h}), P({1})}, {P({Rational(-5, 2), Rational(5, 2), -h}), P({1})}}}},
      {"zz", {{{P({4, -2, -3}), P({-28, 6, -2})}, {P({-10, 10, -2}), P({-14, 3, -1})}}}},
  };
}

Result criterion_golden() {
  Result r;
  SolveReport report;
  const Partition& p = keep("golden", solve_uplcp(reduced_example(), {}, &report));
  r.require(p.pieces.size() == 4, "expected 4 pieces, got " + std::to_string(p.pieces.size()));
  if (!r.ok) return r;
  std::multiset<std::string> keys, want{"wz", "zw", "zz", "zz"};
  for (const auto& pc : p.pieces) keys.insert(pc.basis.key());
  r.require(keys == want, "unexpected basis multiset");

  const double expect[3] = {(-1 - std::sqrt(13.0)) / 3, (-1 + std::sqrt(13.0)) / 3, (5 - std::sqrt(5.0)) / 2};
  const Endpoint exact[3] = {Endpoint(P({-4, 2, 3}), -2, -1), Endpoint(P({-4, 2, 3}), 0, 1),
                             Endpoint(P({5, -5, 1}), 1, 2)};
  for (int k = 0; k < 3; ++k) {
    const Endpoint& e = p.pieces[static_cast<std::size_t>(k)].interval.hi;
    const double v = e.refined(Rational(1, 1000000000)).approximation().convert_to<double>();
    r.require(std::fabs(v - expect[k]) < 1e-6, "breakpoint " + std::to_string(k + 1) + " off");
    r.require(e == exact[k], "breakpoint " + std::to_string(k + 1) + " not the exact algebraic value");
  }
  const auto golden = golden_functions();
  for (const auto& pc : p.pieces) {
    const auto& g = golden.at(pc.basis.key()).funcs;
    for (std::size_t i = 0; i < 2; ++i) {
      // v_i / d == num / den as rational functions.
      r.require(pc.funcs.numerators[i] * g[i].second == g[i].first * pc.funcs.det,
                "function " + pc.basis.name(i) + " on " + pc.basis.to_string() + " differs");
    }
  }
  return r;
}

Result criterion_reuse() {
  Result r;
  SolveReport report;
  const Partition& p = keep("reuse", solve_uplcp(reduced_example(), {}, &report));
  int zz = 0;
  for (const auto& pc : p.pieces) zz += pc.basis.key() == "zz";
  r.require(zz == 2, "expected two {z1, z2} pieces, got " + std::to_string(zz));
  const auto it = report.computations_per_basis.find("zz");
  r.require(it != report.computations_per_basis.end() && it->second == 1,
            "{z1, z2} polynomials computed more than once");
  r.detail = r.ok ? "zz computed " + std::to_string(it->second) + "x for 2 pieces" : r.detail;
  return r;
}

Result criterion_fixed_oracle() {
  Result r;
  oracle::Draw d(20240601);
  int infeasible = 0;
  for (int trial = 0; trial < 200 && r.ok; ++trial) {
    const auto h = static_cast<Eigen::Index>(1 + trial % 4);
    const auto [M, q] = oracle::random_psd_lcp(d, h);
    const FixedLcp l{M, q};
    const auto all = oracle::enumerate_lcp(M, q);
    const auto out = criss_cross(l, default_pivot_limit(l.h()));
    const std::string tag = "instance " + std::to_string(trial);
    r.require(out.status != LcpStatus::pivot_limit, tag + ": pivot limit");
    r.require((out.status == LcpStatus::solved) == !all.empty(), tag + ": feasibility verdict differs");
    if (out.status == LcpStatus::solved) {
      r.require(oracle::lcp_conditions(M, q, out.w, out.z), tag + ": LCP conditions fail");
    } else {
      ++infeasible;
    }
  }
  if (r.ok) r.detail = "200 instances, " + std::to_string(infeasible) + " infeasible";
  return r;
}

Result criterion_parametric_oracle() {
  Result r;
  std::size_t unique_checked = 0;
  for (std::uint64_t seed = 1; seed <= 50 && r.ok; ++seed) {
    const std::size_t h = 1 + seed % 3;
    const UpLcpInstance in = generate_sufficient_instance(h, 0.6, 1000 + seed);
    const Partition& p = keep("parametric " + std::to_string(seed), solve_uplcp(in));
    for (int k = 0; k <= 24; ++k) {
      const Rational t(k, 24);
      const auto idx = p.locate(t);
      const std::string tag = "seed " + std::to_string(seed) + " theta " + to_string(t);
      r.require(idx.has_value(), tag + ": no piece");
      if (!idx) break;
      const auto s = p.pieces[*idx].solution_at(t);
      const FixedLcp f = fix_theta(in, t);
      r.require(oracle::lcp_conditions(f.M, f.q, s.w, s.z), tag + ": System conditions fail");
      const auto all = oracle::enumerate_lcp(f.M, f.q);
      bool listed = false;
      std::set<std::string> values;
      for (const auto& e : all) {
        listed = listed || (e.w == s.w && e.z == s.z);
        std::ostringstream v;
        v << e.w.transpose() << '|' << e.z.transpose();
        values.insert(v.str());
      }
      r.require(listed, tag + ": not a feasible complementary basic solution");
      if (values.size() == 1) ++unique_checked;
    }
  }
  if (r.ok) r.detail = "1250 samples, " + std::to_string(unique_checked) + " with a unique fixed-theta solution";
  return r;
}

const QpSolutionPiece* piece_at(const std::vector<QpSolutionPiece>& pieces, const Rational& t) {
  for (const auto& pc : pieces) {
    if (pc.interval.lo.compare(t) != std::strong_ordering::greater &&
        pc.interval.hi.compare(t) != std::strong_ordering::less) {
      return &pc;
    }
  }
  return nullptr;
}

std::vector<QpSolutionPiece> solve_qp(const std::string& tag, const std::string& text) {
  const InstanceFile f = parse_instance(text);
  auto [lcp, map] = f.kind == ProblemKind::lp ? lp_to_lcp(f.qp()) : qp_to_lcp(f.qp());
  const Partition& p = keep(tag, solve_uplcp(lcp));
  return map_solution_back(p, map);
}

Result criterion_reformulation() {
  Result r;
  {
    const auto pieces = solve_qp("qp 1x1", "type qp\nn 1\nm 1\ntheta 0 1\nQ 1 1 : 2\nc 1 : -2\nA 1 1 : 1\nb 1 : 1\n");
    r.require(pieces.size() == 1, "1x1 QP: expected one piece");
    if (r.ok) {
      const auto v = pieces[0].at(Rational(1, 2));
      r.require(v.x(0) == 1 && v.primal_slack(0) == 0 && v.dual_constraints(0) == 0 && v.dual_nonneg(0) == 0,
                "1x1 QP: x != 1 or wrong multipliers");
    }
  }
  {
    const auto pieces = solve_qp("lp sign", "type lp\nn 1\nm 1\ntheta -1 1\nc 1 : 0 -1\nA 1 1 : 1\nb 1 : 1\n");
    r.require(pieces.size() == 2, "LP -theta x: expected two pieces");
    if (r.ok) {
      r.require(pieces[0].interval.hi == Endpoint(Rational(0)), "LP -theta x: breakpoint not 0");
      r.require(pieces[0].x[0].is_zero(), "LP -theta x: x != 0 for theta < 0");
      r.require(pieces[1].x[0] == pieces[1].denominator, "LP -theta x: x != 1 for theta > 0");
    }
  }
  {
    const auto pieces = solve_qp("lp bound", "type lp\nn 1\nm 1\ntheta 0 1\nc 1 : -1\nA 1 1 : 1\nb 1 : 0 1\n");
    r.require(pieces.size() == 1, "LP x <= theta: expected one piece");
    if (r.ok) {
      const auto& pc = pieces[0];
      r.require(pc.x[0] == P({0, 1}) * pc.denominator, "LP x <= theta: x != theta");
      r.require(pc.primal_slack[0].is_zero(), "LP x <= theta: slack != 0");
      r.require(pc.dual_constraints[0] == pc.denominator, "LP x <= theta: dual != 1");
    }
  }
  oracle::Draw d(777);
  for (int trial = 0; trial < 20 && r.ok; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(d.integer(0, 2));
    const std::size_t m = static_cast<std::size_t>(d.integer(0, static_cast<long>(5 - n)));
    const UpQpInstance qp = oracle::random_convex_qp(d, n, m);
    auto [lcp, map] = qp_to_lcp(qp);
    r.require(map.is_bijection(), "index map is not a bijection");
    const auto pieces = map_solution_back(keep("qp " + std::to_string(trial), solve_uplcp(lcp)), map);
    for (int k = 0; k < 10; ++k) {
      const Rational t(k, 9);
      const std::string tag = "qp " + std::to_string(trial) + " theta " + to_string(t);
      const auto* pc = piece_at(pieces, t);
      r.require(pc != nullptr, tag + ": no piece");
      if (!pc) break;
      const auto v = pc->at(t);
      const RationalMatrix Q = qp.Q.at(t), A = qp.A.at(t);
      const RationalVector c = qp.c.at(t).col(0), b = qp.b.at(t).col(0);
      const RationalVector u = Q * v.x + A.transpose() * v.dual_constraints + c;
      const RationalVector s = b - A * v.x;
      r.require(u == v.dual_nonneg && s == v.primal_slack, tag + ": KKT residual nonzero");
      bool signs = v.x.dot(v.dual_nonneg) == 0 && v.dual_constraints.dot(v.primal_slack) == 0;
      for (Eigen::Index i = 0; i < v.x.size(); ++i) signs = signs && v.x(i) >= 0 && v.dual_nonneg(i) >= 0;
      for (Eigen::Index i = 0; i < s.size(); ++i) signs = signs && s(i) >= 0 && v.dual_constraints(i) >= 0;
      r.require(signs, tag + ": sign or complementarity violated");
      r.require(qp.objective(t, v.x) == oracle::qp_brute_force(Q, c, A, b), tag + ": objective differs");
    }
  }
  if (r.ok) r.detail = "3 hand examples, 20 random QPs x 10 samples";
  return r;
}

Result criterion_determinism() {
  Result r;
  for (std::uint64_t seed = 1; seed <= 10 && r.ok; ++seed) {
    const UpLcpInstance in = generate_sufficient_instance(2 + seed % 5, 0.7, 500 + seed);
    SolverOptions one, four;
    four.workers = 4;
    const Partition& a = keep("det1 " + std::to_string(seed), solve_uplcp(in, one));
    const Partition& b = keep("det4 " + std::to_string(seed), solve_uplcp(in, four));
    r.require(write_partition(a, one.eps) == write_partition(b, four.eps),
              "seed " + std::to_string(seed) + ": output differs between 1 and 4 workers");
  }
  return r;
}

Result criterion_scale() {
  Result r;
  std::ostringstream detail;
  for (const auto& [h, limit] : {std::pair<std::size_t, double>{10, 60.0}, {20, 600.0}}) {
    const UpLcpInstance in = generate_sufficient_instance(h, 1.0, 2026);
    SolveReport report;
    const auto t0 = std::chrono::steady_clock::now();
    const Partition& p = keep("scale " + std::to_string(h), solve_uplcp(in, {}, &report));
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    r.require(secs < limit, "h = " + std::to_string(h) + " took " + std::to_string(secs) + " s");
    r.require(oracle::partition_problems(p).empty(), "h = " + std::to_string(h) + ": " + oracle::partition_problems(p));
    detail << "h=" << h << ": " << p.pieces.size() << " pieces, " << report.intervals_processed << " intervals, "
           << std::fixed << std::setprecision(2) << secs << " s; ";
  }
  if (r.ok) r.detail = detail.str();
  return r;
}

Result criterion_roots() {
  Result r;
  oracle::Draw d(99);
  for (int trial = 0; trial < 500 && r.ok; ++trial) {
    const long factors = d.integer(1, 6);
    std::map<Rational, int> expect;
    Poly p = Poly::constant(d.rational(1, 5, 3) * (d.coin(50) ? 1 : -1));
    for (long f = 0; f < factors; ++f) {
      const Rational root = d.rational(-6, 6, 5);
      const int mult = static_cast<int>(d.integer(1, 3));
      expect[root] += mult;
      for (int k = 0; k < mult; ++k) p = p * Poly{-root, 1};
    }
    const std::string tag = "product " + std::to_string(trial);
    const auto roots = real_roots(p);
    r.require(roots.size() == expect.size(), tag + ": wrong root count");
    if (!r.ok) break;
    std::size_t i = 0;
    for (const auto& [root, mult] : expect) {
      const auto& got = roots[i++];
      r.require(got.value.is_rational() && got.value.rational() == root, tag + ": root not recovered exactly");
      r.require(got.multiplicity == mult, tag + ": wrong multiplicity");
    }
    const SturmSequence sturm(square_free_part(p));
    r.require(sturm.count_all() == static_cast<int>(expect.size()), tag + ": Sturm total differs");
    const Rational a = d.rational(-7, 7, 4), b = a + d.rational(0, 6, 4);
    int inside = 0;
    for (const auto& [root, mult] : expect) inside += (root > a && root <= b);
    r.require(sturm.count(a, b) == inside, tag + ": Sturm count on (a, b] differs");
  }
  if (r.ok) r.detail = "500 products";
  return r;
}

Result criterion_integrity() {
  Result r;
  for (const auto& [tag, p] : g_partitions) {
    const std::string problem = oracle::partition_problems(p);
    r.require(problem.empty(), tag + ": " + problem);
  }
  if (r.ok) r.detail = std::to_string(g_partitions.size()) + " partitions";
  return r;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget_s;
    std::function<Result()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "golden 2x2 reproduction", 1.0, criterion_golden},
      {2, "basis reuse memo", 1.0, criterion_reuse},
      {3, "fixed-theta oracle equivalence", 30.0, criterion_fixed_oracle},
      {4, "parametric oracle equivalence", 120.0, criterion_parametric_oracle},
      {5, "QP/LP reformulation", 60.0, criterion_reformulation},
      {7, "determinism across worker counts", 600.0, criterion_determinism},
      {8, "scale sanity h=10, h=20", 660.0, criterion_scale},
      {9, "root isolation suite", 30.0, criterion_roots},
      {6, "partition integrity on all of the above", 60.0, criterion_integrity},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Result r;
    try {
      r = c.run();
    } catch (const std::exception& e) {
      r.ok = false;
      r.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (r.ok && secs >= c.budget_s) {
      r.ok = false;
      r.detail = "over the " + std::to_string(c.budget_s) + " s budget";
    }
    failed += !r.ok;
    std::cout << "criterion " << c.id << " [" << c.name << "]: " << (r.ok ? "PASS" : "FAIL") << " (" << std::fixed
              << std::setprecision(2) << secs << " s)" << (r.detail.empty() ? "" : " " + r.detail) << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
