#include "upsolve/lcp.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace upsolve {

FixedLcp fix_theta(const UpLcpInstance& inst, const Rational& theta_star) {
  if (theta_star < inst.alpha || theta_star > inst.beta) {
    throw std::out_of_range("theta* = " + theta_star.str() + " lies outside [" + inst.alpha.str() + ", " +
                            inst.beta.str() + "]");
  }
  FixedLcp out;
  out.M = inst.M.at(theta_star);
  out.q = inst.q.at(theta_star).col(0);
  return out;
}

std::size_t default_pivot_limit(std::size_t h) { return std::size_t{10} << std::min<std::size_t>(h, 20); }

std::optional<RationalMatrix> solve_exact(RationalMatrix A, RationalMatrix B) {
  const Eigen::Index n = A.rows();
  if (A.cols() != n || B.rows() != n) throw std::invalid_argument("solve_exact: shape mismatch");
  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::Index p = k;
    while (p < n && A(p, k) == 0) ++p;
    if (p == n) return std::nullopt;
    if (p != k) {
      A.row(p).swap(A.row(k));
      B.row(p).swap(B.row(k));
    }
    const Rational inv = Rational(1) / A(k, k);
    A.row(k) *= inv;
    B.row(k) *= inv;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (i == k || A(i, k) == 0) continue;
      const Rational f = A(i, k);
      A.row(i) -= f * A.row(k);
      B.row(i) -= f * B.row(k);
    }
  }
  return B;
}

namespace {

RationalMatrix full_g(const RationalMatrix& M) {
  const Eigen::Index h = M.rows();
  RationalMatrix G(h, 2 * h);
  G.leftCols(h) = RationalMatrix::Identity(h, h);
  G.rightCols(h) = -M;
  return G;
}

RationalMatrix basis_matrix(const RationalMatrix& G, const ComplementaryBasis& basis) {
  const auto h = static_cast<Eigen::Index>(basis.size());
  RationalMatrix B(h, h);
  for (Eigen::Index i = 0; i < h; ++i) B.col(i) = G.col(static_cast<Eigen::Index>(basis.column(static_cast<std::size_t>(i))));
  return B;
}

Eigen::Index complement_column(const ComplementaryBasis& basis, std::size_t pair) {
  const std::size_t h = basis.size();
  return static_cast<Eigen::Index>(basis.is_z(pair) ? pair : h + pair);
}

// Rows of [T | t] are indexed by pair: row i holds the basic variable of pair i.
class Tableau {
 public:
  Tableau(const FixedLcp& lcp, TableauUpdate mode) : mode_(mode), g_(full_g(lcp.M)), q_(lcp.q) {
    const auto h = static_cast<Eigen::Index>(lcp.h());
    basis_ = ComplementaryBasis(lcp.h());
    tab_.resize(h, 2 * h + 1);
    tab_.leftCols(2 * h) = g_;
    tab_.col(2 * h) = q_;
  }

  const ComplementaryBasis& basis() const { return basis_; }
  const Rational& rhs(std::size_t row) const { return tab_(static_cast<Eigen::Index>(row), tab_.cols() - 1); }
  const Rational& entry(std::size_t row, Eigen::Index col) const { return tab_(static_cast<Eigen::Index>(row), col); }

  // Returns false if a required pivot element is zero (singular basis).
  bool diagonal(std::size_t r) {
    ComplementaryBasis next = basis_;
    next.flip(r);
    if (mode_ == TableauUpdate::rank_one) {
      if (!pivot(static_cast<Eigen::Index>(r), complement_column(basis_, r))) return false;
      basis_ = next;
      return true;
    }
    return resolve(next);
  }

  bool exchange(std::size_t r, std::size_t s) {
    ComplementaryBasis next = basis_;
    next.flip(r);
    next.flip(s);
    if (mode_ == TableauUpdate::rank_one) {
      const Eigen::Index cr = complement_column(basis_, r);
      const Eigen::Index cs = complement_column(basis_, s);
      if (!pivot(static_cast<Eigen::Index>(r), cs)) return false;
      if (!pivot(static_cast<Eigen::Index>(s), cr)) return false;
      tab_.row(static_cast<Eigen::Index>(r)).swap(tab_.row(static_cast<Eigen::Index>(s)));
      basis_ = next;
      return true;
    }
    return resolve(next);
  }

 private:
  bool pivot(Eigen::Index row, Eigen::Index col) {
    if (tab_(row, col) == 0) return false;
    const Rational inv = Rational(1) / tab_(row, col);
    tab_.row(row) *= inv;
    for (Eigen::Index i = 0; i < tab_.rows(); ++i) {
      if (i == row || tab_(i, col) == 0) continue;
      const Rational f = tab_(i, col);
      tab_.row(i) -= f * tab_.row(row);
    }
    return true;
  }

  bool resolve(const ComplementaryBasis& next) {
    RationalMatrix rhs(g_.rows(), g_.cols() + 1);
    rhs.leftCols(g_.cols()) = g_;
    rhs.col(g_.cols()) = q_;
    auto solved = solve_exact(basis_matrix(g_, next), std::move(rhs));
    if (!solved) return false;
    tab_ = std::move(*solved);
    basis_ = next;
    return true;
  }

  TableauUpdate mode_;
  RationalMatrix g_;
  RationalVector q_;
  RationalMatrix tab_;
  ComplementaryBasis basis_;
};

}  // namespace

LcpOutcome criss_cross(const FixedLcp& lcp, std::size_t pivot_limit, TableauUpdate update) {
  if (pivot_limit < 1) throw std::invalid_argument("criss_cross: pivot_limit must be >= 1");
  const std::size_t h = lcp.h();
  if (static_cast<std::size_t>(lcp.M.rows()) != h || static_cast<std::size_t>(lcp.M.cols()) != h) {
    throw std::invalid_argument("criss_cross: M and q dimensions differ");
  }
  if (update == TableauUpdate::automatic) update = h <= 8 ? TableauUpdate::resolve : TableauUpdate::rank_one;

  Tableau tab(lcp, update);
  LcpOutcome out;
  std::set<std::string> seen{tab.basis().key()};
  out.path.push_back(tab.basis());

  for (;;) {
    std::size_t r = h;
    for (std::size_t i = 0; i < h; ++i) {
      if (tab.rhs(i).sign() < 0) {
        r = i;
        break;
      }
    }
    if (r == h) {
      out.status = LcpStatus::solved;
      out.basis = tab.basis();
      out.w = RationalVector::Zero(static_cast<Eigen::Index>(h));
      out.z = RationalVector::Zero(static_cast<Eigen::Index>(h));
      for (std::size_t i = 0; i < h; ++i) {
        auto& target = tab.basis().is_z(i) ? out.z : out.w;
        target(static_cast<Eigen::Index>(i)) = tab.rhs(i);
      }
      return out;
    }
    if (out.pivots >= pivot_limit) {
      out.status = LcpStatus::pivot_limit;
      out.basis = tab.basis();
      out.note = "pivot limit reached";
      return out;
    }

    bool ok = false;
    if (tab.entry(r, complement_column(tab.basis(), r)) != 0) {
      ok = tab.diagonal(r);
    } else {
      // x_r = t_r - sum T_rj x_j: only nonbasic columns with T_rj < 0 can raise x_r.
      std::size_t s = h;
      for (std::size_t j = 0; j < h; ++j) {
        if (j != r && tab.entry(r, complement_column(tab.basis(), j)).sign() < 0) {
          s = j;
          break;
        }
      }
      if (s == h) {
        out.status = LcpStatus::infeasible;
        out.basis = tab.basis();
        return out;
      }
      ok = tab.exchange(r, s);
    }
    ++out.pivots;
    if (!ok) {
      out.status = LcpStatus::pivot_limit;
      out.basis = tab.basis();
      out.note = "singular pivot block; M is not sufficient at this theta";
      return out;
    }
    out.path.push_back(tab.basis());
    if (!seen.insert(tab.basis().key()).second) {
      out.status = LcpStatus::pivot_limit;
      out.basis = tab.basis();
      out.note = "basis repeated (cycling); M is not sufficient at this theta";
      return out;
    }
  }
}

std::optional<BasicSolution> basic_solution(const FixedLcp& lcp, const ComplementaryBasis& basis) {
  const auto h = static_cast<Eigen::Index>(lcp.h());
  if (basis.size() != lcp.h()) throw std::invalid_argument("basic_solution: basis size mismatch");
  auto x = solve_exact(basis_matrix(full_g(lcp.M), basis), RationalMatrix(lcp.q));
  if (!x) return std::nullopt;
  BasicSolution out{RationalVector::Zero(h), RationalVector::Zero(h)};
  for (Eigen::Index i = 0; i < h; ++i) {
    auto& target = basis.is_z(static_cast<std::size_t>(i)) ? out.z : out.w;
    target(i) = (*x)(i, 0);
  }
  return out;
}

bool satisfies_lcp(const FixedLcp& lcp, const RationalVector& w, const RationalVector& z) {
  const auto h = static_cast<Eigen::Index>(lcp.h());
  if (w.size() != h || z.size() != h) return false;
  const RationalVector residual = w - lcp.M * z - lcp.q;
  for (Eigen::Index i = 0; i < h; ++i) {
    if (residual(i) != 0 || w(i).sign() < 0 || z(i).sign() < 0 || w(i) * z(i) != 0) return false;
  }
  return true;
}

}  // namespace upsolve
