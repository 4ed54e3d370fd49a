#include "upsolve/uplcp.hpp"

#include <algorithm>
#include <condition_variable>
#include <exception>
#include <future>
#include <memory>
#include <mutex>
#include <thread>

namespace upsolve {

namespace {

bool less(const Endpoint& a, const Endpoint& b) { return compare_algebraic(a, b) == std::strong_ordering::less; }
bool same(const Endpoint& a, const Endpoint& b) { return compare_algebraic(a, b) == std::strong_ordering::equal; }

std::string describe(const Endpoint& e) {
  if (e.is_rational()) return e.rational().str();
  return "~" + to_decimal(e.approximation(), 6);
}

}  // namespace

BasicSolution IntervalPiece::solution_at(const Rational& theta) const {
  const auto h = static_cast<Eigen::Index>(basis.size());
  BasicSolution out{RationalVector::Zero(h), RationalVector::Zero(h)};
  const Rational d = evaluate(funcs.det, theta);
  for (Eigen::Index i = 0; i < h; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    auto& target = basis.is_z(idx) ? out.z : out.w;
    target(i) = evaluate(funcs.numerators[idx], theta) / d;
  }
  return out;
}

std::optional<std::size_t> Partition::locate(const Rational& theta) const {
  for (std::size_t k = 0; k < pieces.size(); ++k) {
    const auto& iv = pieces[k].interval;
    if (iv.lo.compare(theta) != std::strong_ordering::greater && iv.hi.compare(theta) != std::strong_ordering::less) {
      return k;
    }
  }
  return std::nullopt;
}

int direction_at(const Poly& g, const Rational& x) {
  Poly d = g;
  while (!d.is_zero()) {
    d = derivative(d);
    const int s = evaluate(d, x).sign();
    if (s != 0) return s;
  }
  return 0;
}

std::size_t odd_root_count(const BasisPolynomials& bp) {
  RootOptions opts;
  opts.find_rational = false;
  std::vector<AlgebraicNumber> odd;
  for (const auto& v : bp.numerators) {
    if (v.degree() < 1) continue;
    for (auto& r : real_roots(v, opts)) {
      if (r.multiplicity % 2 == 1) odd.push_back(std::move(r.value));
    }
  }
  std::sort(odd.begin(), odd.end(), less);
  const auto last = std::unique(odd.begin(), odd.end(), same);
  return static_cast<std::size_t>(last - odd.begin());
}

BasisPolynomials basis_polynomials(const UpLcpInstance& inst, const ComplementaryBasis& basis,
                                   const Rational& theta_star) {
  BasisPolynomials bp = reduced_basis_polynomials(inst.M, inst.q, basis);
  if (bp.det.is_zero()) {
    throw DegenerateBasisError("basis " + basis.to_string() + " has identically zero determinant");
  }
  bp.sign = det_sign(bp.det, theta_star);
  const DetValidation check = validate_det_nonvanishing(bp.det, inst.alpha, inst.beta);
  if (!check.ok) {
    const auto& r = *check.offending;
    throw AssumptionViolation(AssumptionViolation::Kind::sufficiency,
                              "determinant of basis " + basis.to_string() + " vanishes inside Theta, in [" +
                                  to_decimal(r.lo, 9) + ", " + to_decimal(r.hi, 9) + "]",
                              r.exact);
  }
  return bp;
}

std::pair<Endpoint, Endpoint> get_extremes(const ComplementaryBasis& basis, const Rational& theta_star,
                                           const Endpoint& alpha_p, const Endpoint& beta_p,
                                           const BasisPolynomials& bp,
                                           const std::vector<std::vector<RealRoot>>& roots) {
  if (bp.numerators.size() != basis.size() || roots.size() != basis.size()) {
    throw std::invalid_argument("get_extremes: basis, numerators and roots disagree in size");
  }
  if (alpha_p.compare(theta_star) == std::strong_ordering::greater ||
      beta_p.compare(theta_star) == std::strong_ordering::less) {
    throw InternalError("get_extremes: theta* outside [alpha', beta']");
  }
  for (const auto& v : bp.numerators) {
    if ((bp.sign * evaluate(v, theta_star)).sign() < 0) {
      throw InternalError("get_extremes: theta* = " + theta_star.str() + " is not in the invariancy set of " +
                          basis.to_string());
    }
  }

  Endpoint lo = alpha_p;
  Endpoint hi = beta_p;
  for (std::size_t i = 0; i < bp.numerators.size(); ++i) {
    const Poly& v = bp.numerators[i];
    if (v.degree() < 1) continue;
    for (const auto& root : roots[i]) {
      if (root.multiplicity % 2 == 0) continue;
      const Endpoint& r = root.value;
      const auto vs_star = r.compare(theta_star);
      if (vs_star == std::strong_ordering::equal) {
        // theta* is a boundary of the invariancy set; the side follows from
        // the local behaviour of s_B v_i.
        if (direction_at(bp.sign * v, theta_star) > 0) {
          lo = Endpoint(theta_star);
        } else {
          hi = Endpoint(theta_star);
        }
      } else if (vs_star == std::strong_ordering::less) {
        if (less(lo, r)) lo = r;
      } else {
        if (less(r, hi)) hi = r;
      }
    }
  }
  return {std::move(lo), std::move(hi)};
}

std::pair<Endpoint, Endpoint> get_extremes(const ComplementaryBasis& basis, const Rational& theta_star,
                                           const Endpoint& alpha_p, const Endpoint& beta_p,
                                           const BasisPolynomials& bp) {
  const Rational window_lo = alpha_p.is_rational() ? alpha_p.rational() : alpha_p.lo();
  const Rational window_hi = beta_p.is_rational() ? beta_p.rational() : beta_p.hi();
  std::vector<std::vector<RealRoot>> roots(bp.numerators.size());
  for (std::size_t i = 0; i < bp.numerators.size(); ++i) {
    if (bp.numerators[i].degree() >= 1) roots[i] = real_roots_in(bp.numerators[i], window_lo, window_hi);
  }
  return get_extremes(basis, theta_star, alpha_p, beta_p, bp, roots);
}

Rational select_probe(const ParamInterval& interval) {
  if (!less(interval.lo, interval.hi)) throw std::invalid_argument("select_probe: interval has no interior");
  Endpoint lo = interval.lo;
  Endpoint hi = interval.hi;
  for (;;) {
    const Rational inner_lo = lo.is_rational() ? lo.rational() : lo.hi();
    const Rational inner_hi = hi.is_rational() ? hi.rational() : hi.lo();
    if (inner_lo < inner_hi) return (inner_lo + inner_hi) / 2;
    if (lo.width() >= hi.width()) {
      lo.bisect();
    } else {
      hi.bisect();
    }
  }
}

Partition normalize_partition(std::vector<IntervalPiece> pieces, const Rational& alpha, const Rational& beta,
                              std::size_t h) {
  std::erase_if(pieces, [](const IntervalPiece& p) { return !less(p.interval.lo, p.interval.hi); });
  std::sort(pieces.begin(), pieces.end(),
            [](const IntervalPiece& a, const IntervalPiece& b) { return less(a.interval.lo, b.interval.lo); });

  Partition out;
  out.alpha = alpha;
  out.beta = beta;
  out.h = h;
  for (auto& p : pieces) {
    if (!out.pieces.empty()) {
      auto& last = out.pieces.back();
      const auto order = compare_algebraic(last.interval.hi, p.interval.lo);
      if (order == std::strong_ordering::less) {
        throw InternalError("partition has a gap between " + describe(last.interval.hi) + " and " +
                            describe(p.interval.lo));
      }
      if (order == std::strong_ordering::greater) {
        throw InternalError("partition pieces overlap near " + describe(p.interval.lo));
      }
      if (last.basis == p.basis) {
        last.interval.hi = std::move(p.interval.hi);
        continue;
      }
    }
    out.pieces.push_back(std::move(p));
  }
  if (out.pieces.empty()) throw InternalError("partition is empty");
  if (!same(out.pieces.front().interval.lo, Endpoint(alpha)) || !same(out.pieces.back().interval.hi, Endpoint(beta))) {
    throw InternalError("partition does not reach both ends of Theta");
  }
  return out;
}

// ---------------------------------------------------------------------------
// Solver

namespace {

struct BasisAnalysis {
  BasisPolynomials polys;
  std::vector<std::vector<RealRoot>> roots;  // per numerator, inside Theta
};

using AnalysisPtr = std::shared_ptr<const BasisAnalysis>;

// Per-basis memo with at-most-once computation per key.
class BasisCache {
 public:
  BasisCache(const UpLcpInstance& inst, Rational eps) : inst_(inst), eps_(std::move(eps)) {}

  AnalysisPtr get(const ComplementaryBasis& basis, const Rational& theta_star) {
    const std::string key = basis.key();
    std::promise<AnalysisPtr> promise;
    std::shared_future<AnalysisPtr> fut;
    {
      std::lock_guard lock(mu_);
      auto it = table_.find(key);
      if (it != table_.end()) {
        fut = it->second;
      } else {
        fut = promise.get_future().share();
        table_.emplace(key, fut);
        ++computations_;
        ++per_basis_[key];
        it = table_.end();
      }
      if (it != table_.end()) return fut.get();
    }
    try {
      promise.set_value(compute(basis, theta_star));
    } catch (...) {
      promise.set_exception(std::current_exception());
    }
    return fut.get();
  }

  std::vector<std::pair<std::string, AnalysisPtr>> entries() const {
    std::lock_guard lock(mu_);
    std::vector<std::pair<std::string, AnalysisPtr>> out;
    for (const auto& [k, f] : table_) out.emplace_back(k, f.get());
    return out;
  }

  std::size_t computations() const { return computations_; }
  const std::map<std::string, std::size_t>& per_basis() const { return per_basis_; }

 private:
  AnalysisPtr compute(const ComplementaryBasis& basis, const Rational& theta_star) const {
    auto a = std::make_shared<BasisAnalysis>();
    a->polys = basis_polynomials(inst_, basis, theta_star);
    a->roots.resize(a->polys.numerators.size());
    const Rational tight = eps_ / 4;
    for (std::size_t i = 0; i < a->polys.numerators.size(); ++i) {
      const Poly& v = a->polys.numerators[i];
      if (v.degree() < 1) continue;
      RootOptions opts;
      opts.max_rational_bits = 64;
      a->roots[i] = real_roots_in(v, inst_.alpha, inst_.beta, opts);
      for (auto& r : a->roots[i]) r.value.refine(tight);
    }
    return a;
  }

  const UpLcpInstance& inst_;
  Rational eps_;
  mutable std::mutex mu_;
  std::map<std::string, std::shared_future<AnalysisPtr>> table_;
  std::size_t computations_ = 0;
  std::map<std::string, std::size_t> per_basis_;
};

struct Outcome {
  std::optional<IntervalPiece> piece;
  std::vector<ParamInterval> children;  // in push order
  bool singleton = false;
};

class Partitioner {
 public:
  Partitioner(const UpLcpInstance& inst, const SolverOptions& opts)
      : inst_(inst),
        opts_(opts),
        pivot_limit_(opts.pivot_limit ? opts.pivot_limit : default_pivot_limit(inst.h())),
        cache_(inst, opts.eps) {}

  Outcome process(const ParamInterval& iv) {
    const Rational theta_star = select_probe(iv);
    const LcpOutcome lcp = criss_cross(fix_theta(inst_, theta_star), pivot_limit_, opts_.tableau);
    if (lcp.status == LcpStatus::infeasible) {
      throw AssumptionViolation(AssumptionViolation::Kind::feasibility,
                                "LCP is infeasible at theta* = " + theta_star.str(), theta_star);
    }
    if (lcp.status == LcpStatus::pivot_limit) {
      throw AssumptionViolation(AssumptionViolation::Kind::sufficiency,
                                "criss-cross failed at theta* = " + theta_star.str() + ": " + lcp.note, theta_star);
    }
    const AnalysisPtr a = cache_.get(lcp.basis, theta_star);
    auto [lo, hi] = get_extremes(lcp.basis, theta_star, iv.lo, iv.hi, a->polys, a->roots);

    Outcome out;
    if (!less(lo, hi)) {
      // Conflicting boundaries at theta*: reject the singleton, split around it.
      out.singleton = true;
      out.children.push_back({iv.lo, Endpoint(theta_star)});
      out.children.push_back({Endpoint(theta_star), iv.hi});
      return out;
    }
    if (less(iv.lo, lo)) out.children.push_back({iv.lo, lo});
    if (less(hi, iv.hi)) out.children.push_back({hi, iv.hi});
    out.piece = IntervalPiece{lcp.basis, {std::move(lo), std::move(hi)}, a->polys};
    return out;
  }

  Partition run(SolveReport* report) {
    std::vector<ParamInterval> stack{{Endpoint(inst_.alpha), Endpoint(inst_.beta)}};
    std::vector<IntervalPiece> pieces;
    std::size_t processed = 0;
    std::size_t singletons = 0;
    const unsigned workers = std::max(1u, opts_.workers);

    if (workers == 1) {
      while (!stack.empty()) {
        ParamInterval iv = std::move(stack.back());
        stack.pop_back();
        if (++processed > opts_.interval_budget) throw InternalError("interval budget exhausted");
        Outcome o = process(iv);
        singletons += o.singleton ? 1 : 0;
        if (o.piece) pieces.push_back(std::move(*o.piece));
        for (auto& c : o.children) stack.push_back(std::move(c));
      }
    } else {
      std::mutex mu;
      std::condition_variable cv;
      std::size_t active = 0;
      std::exception_ptr failure;
      auto worker = [&] {
        std::unique_lock lock(mu);
        for (;;) {
          cv.wait(lock, [&] { return failure || !stack.empty() || active == 0; });
          if (failure || (stack.empty() && active == 0)) return;
          ParamInterval iv = std::move(stack.back());
          stack.pop_back();
          if (++processed > opts_.interval_budget) {
            failure = std::make_exception_ptr(InternalError("interval budget exhausted"));
            cv.notify_all();
            return;
          }
          ++active;
          lock.unlock();
          Outcome o;
          std::exception_ptr err;
          try {
            o = process(iv);
          } catch (...) {
            err = std::current_exception();
          }
          lock.lock();
          --active;
          if (err) {
            if (!failure) failure = err;
          } else {
            singletons += o.singleton ? 1 : 0;
            if (o.piece) pieces.push_back(std::move(*o.piece));
            for (auto& c : o.children) stack.push_back(std::move(c));
          }
          cv.notify_all();
        }
      };
      std::vector<std::thread> pool;
      pool.reserve(workers);
      for (unsigned t = 0; t < workers; ++t) pool.emplace_back(worker);
      for (auto& t : pool) t.join();
      if (failure) std::rethrow_exception(failure);
    }

    Partition part = normalize_partition(std::move(pieces), inst_.alpha, inst_.beta, inst_.h());
    if (report) {
      report->intervals_processed = processed;
      report->singletons_discarded = singletons;
      report->basis_computations = cache_.computations();
      report->computations_per_basis = cache_.per_basis();
      observation_bound_diagnostics(part, *report);
    }
    return part;
  }

 private:
  void observation_bound_diagnostics(const Partition& part, SolveReport& report) const {
    std::map<std::string, std::size_t> counts;
    for (const auto& p : part.pieces) ++counts[p.basis.key()];
    for (const auto& [key, a] : cache_.entries()) {
      auto it = counts.find(key);
      if (it == counts.end() || it->second <= 1) continue;
      const std::size_t n = odd_root_count(a->polys);
      const std::size_t bound = std::max<std::size_t>(1, n > inst_.h() ? n - inst_.h() : 0);
      if (it->second > bound) {
        report.diagnostics.push_back("basis " + ComplementaryBasis::from_key(key).to_string() + " appears in " +
                                     std::to_string(it->second) + " pieces, above max(1, n - h) = " +
                                     std::to_string(bound));
      }
    }
  }

  const UpLcpInstance& inst_;
  const SolverOptions& opts_;
  std::size_t pivot_limit_;
  BasisCache cache_;
};

}  // namespace

Partition solve_uplcp(const UpLcpInstance& inst, const SolverOptions& opts, SolveReport* report) {
  inst.validate();
  if (opts.eps.sign() <= 0) throw std::invalid_argument("solver tolerance must be positive");
  Partitioner p(inst, opts);
  return p.run(report);
}

}  // namespace upsolve
