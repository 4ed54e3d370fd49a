#include "upsolve/reformulate.hpp"

#include <stdexcept>

namespace upsolve {

void UpQpInstance::validate() const {
  const auto N = static_cast<Eigen::Index>(n);
  const auto Mc = static_cast<Eigen::Index>(m);
  if (n < 1) throw std::invalid_argument("qp needs n >= 1");
  if (Q.rows() != N || Q.cols() != N) throw std::invalid_argument("Q must be n x n");
  if (c.rows() != N || c.cols() != 1) throw std::invalid_argument("c must be n x 1");
  if (A.rows() != Mc || A.cols() != N) throw std::invalid_argument("A must be m x n");
  if (b.rows() != Mc || b.cols() != 1) throw std::invalid_argument("b must be m x 1");
  if (Q.sigma() != Q.sigma().transpose() || Q.mu() != Q.mu().transpose()) {
    throw std::invalid_argument("Q must be symmetric");
  }
  if (alpha >= beta) throw std::invalid_argument("theta interval requires alpha < beta");
}

bool UpQpInstance::is_lp() const {
  return (Q.sigma().array() == Rational(0)).all() && (Q.mu().array() == Rational(0)).all();
}

Rational UpQpInstance::objective(const Rational& theta, const RationalVector& x) const {
  const RationalVector qx = Q.at(theta) * x;
  return x.dot(qx) / 2 + c.at(theta).col(0).dot(x);
}

bool IndexMap::is_bijection() const {
  if (pairs.size() != n + m) return false;
  std::vector<int> primal(n, 0), constraint(m, 0);
  for (const auto& [role, k] : pairs) {
    if (role == QpRole::primal) {
      if (k >= n) return false;
      ++primal[k];
    } else {
      if (k >= m) return false;
      ++constraint[k];
    }
  }
  for (int v : primal) {
    if (v != 1) return false;
  }
  for (int v : constraint) {
    if (v != 1) return false;
  }
  return true;
}

std::pair<UpLcpInstance, IndexMap> qp_to_lcp(const UpQpInstance& qp) {
  qp.validate();
  const auto n = static_cast<Eigen::Index>(qp.n);
  const auto m = static_cast<Eigen::Index>(qp.m);
  const Eigen::Index h = n + m;

  RationalMatrix s = RationalMatrix::Zero(h, h);
  RationalMatrix u = RationalMatrix::Zero(h, h);
  s.topLeftCorner(n, n) = qp.Q.sigma();
  u.topLeftCorner(n, n) = qp.Q.mu();
  s.topRightCorner(n, m) = qp.A.sigma().transpose();
  u.topRightCorner(n, m) = qp.A.mu().transpose();
  s.bottomLeftCorner(m, n) = -qp.A.sigma();
  u.bottomLeftCorner(m, n) = -qp.A.mu();

  RationalMatrix qs(h, 1), qu(h, 1);
  qs.topRows(n) = qp.c.sigma();
  qu.topRows(n) = qp.c.mu();
  qs.bottomRows(m) = qp.b.sigma();
  qu.bottomRows(m) = qp.b.mu();

  UpLcpInstance lcp{ParamMatrix(std::move(s), std::move(u)), ParamMatrix(std::move(qs), std::move(qu)), qp.alpha,
                    qp.beta};
  IndexMap map;
  map.n = qp.n;
  map.m = qp.m;
  for (std::size_t j = 0; j < qp.n; ++j) map.pairs.emplace_back(QpRole::primal, j);
  for (std::size_t k = 0; k < qp.m; ++k) map.pairs.emplace_back(QpRole::constraint, k);
  return {std::move(lcp), std::move(map)};
}

std::pair<UpLcpInstance, IndexMap> lp_to_lcp(const UpQpInstance& lp) {
  if (!lp.is_lp()) throw std::invalid_argument("lp_to_lcp: Q must be identically zero");
  return qp_to_lcp(lp);
}

QpSolutionPiece::Values QpSolutionPiece::at(const Rational& theta) const {
  const Rational d = evaluate(denominator, theta);
  auto eval = [&](const std::vector<Poly>& fs) {
    RationalVector v(static_cast<Eigen::Index>(fs.size()));
    for (std::size_t i = 0; i < fs.size(); ++i) v(static_cast<Eigen::Index>(i)) = evaluate(fs[i], theta) / d;
    return v;
  };
  return {eval(x), eval(primal_slack), eval(dual_constraints), eval(dual_nonneg)};
}

std::vector<QpSolutionPiece> map_solution_back(const Partition& partition, const IndexMap& map) {
  if (partition.h != map.pairs.size() || !map.is_bijection()) {
    throw std::invalid_argument("map_solution_back: index map does not match the partition");
  }
  std::vector<QpSolutionPiece> out;
  out.reserve(partition.pieces.size());
  for (const auto& p : partition.pieces) {
    if (p.basis.size() != map.pairs.size() || p.funcs.numerators.size() != map.pairs.size()) {
      throw std::invalid_argument("map_solution_back: piece dimension mismatch");
    }
    QpSolutionPiece piece;
    piece.basis = p.basis;
    piece.interval = p.interval;
    // Basic values are s_B v_i / (s_B d); keep the sign inside so d > 0 on Theta.
    piece.denominator = p.funcs.sign * p.funcs.det;
    piece.x.assign(map.n, Poly());
    piece.dual_nonneg.assign(map.n, Poly());
    piece.dual_constraints.assign(map.m, Poly());
    piece.primal_slack.assign(map.m, Poly());
    for (std::size_t i = 0; i < map.pairs.size(); ++i) {
      const auto [role, k] = map.pairs[i];
      const Poly v = p.funcs.sign * p.funcs.numerators[i];
      if (role == QpRole::primal) {
        (p.basis.is_z(i) ? piece.x : piece.dual_nonneg)[k] = v;
      } else {
        (p.basis.is_z(i) ? piece.dual_constraints : piece.primal_slack)[k] = v;
      }
    }
    out.push_back(std::move(piece));
  }
  return out;
}

bool is_psd(RationalMatrix S) {
  const Eigen::Index n = S.rows();
  if (S.cols() != n) throw std::invalid_argument("is_psd: matrix must be square");
  if (S != S.transpose()) return false;
  // Symmetric elimination without pivoting; a zero pivot needs a zero row.
  for (Eigen::Index k = 0; k < n; ++k) {
    const Rational piv = S(k, k);
    if (piv.sign() < 0) return false;
    if (piv == 0) {
      for (Eigen::Index j = k + 1; j < n; ++j) {
        if (S(k, j) != 0) return false;
      }
      continue;
    }
    for (Eigen::Index i = k + 1; i < n; ++i) {
      if (S(i, k) == 0) continue;
      const Rational f = S(i, k) / piv;
      S.row(i).tail(n - k) -= f * S.row(k).tail(n - k);
    }
  }
  return true;
}

std::vector<std::string> convexity_diagnostics(const UpQpInstance& qp) {
  std::vector<std::string> out;
  for (int k = 0; k <= 4; ++k) {
    const Rational theta = qp.alpha + (qp.beta - qp.alpha) * k / 4;
    if (!is_psd(qp.Q.at(theta))) {
      out.push_back("Q(theta) is not positive semidefinite at theta = " + to_string(theta));
    }
  }
  return out;
}

}  // namespace upsolve
