#pragma once

#include "upsolve/param_linalg.hpp"

#include <stdexcept>

namespace upsolve {

/// w - M(theta) z = q(theta), w'z = 0, w, z >= 0 for theta in [alpha, beta].
struct UpLcpInstance {
  ParamMatrix M;  // h x h
  ParamMatrix q;  // h x 1
  Rational alpha = 0;
  Rational beta = 1;

  std::size_t h() const { return static_cast<std::size_t>(M.rows()); }

  /// Throws std::invalid_argument on inconsistent shapes or alpha >= beta.
  void validate() const {
    if (M.rows() < 1 || M.rows() != M.cols()) throw std::invalid_argument("M must be square with h >= 1");
    if (q.rows() != M.rows() || q.cols() != 1) throw std::invalid_argument("q must have h rows");
    if (alpha >= beta) throw std::invalid_argument("theta interval requires alpha < beta");
  }

  friend bool operator==(const UpLcpInstance&, const UpLcpInstance&) = default;
};

}  // namespace upsolve
