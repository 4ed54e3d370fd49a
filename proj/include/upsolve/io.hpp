#pragma once

#include "upsolve/reformulate.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

namespace upsolve {

enum class ProblemKind { lcp, qp, lp };

std::string to_string(ProblemKind k);
/// "lcp", "qp" or "lp"; nullopt otherwise.
std::optional<ProblemKind> parse_problem_kind(std::string_view s);

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct InstanceFile {
  ProblemKind kind = ProblemKind::lcp;
  std::variant<UpLcpInstance, UpQpInstance> data;

  const UpLcpInstance& lcp() const { return std::get<UpLcpInstance>(data); }
  const UpQpInstance& qp() const { return std::get<UpQpInstance>(data); }
};

/// Line grammar (blank lines and '#' comments ignored):
///   type lcp|qp|lp
///   h N                      (lcp)
///   n N / m M                (qp, lp; m may be 0)
///   theta ALPHA BETA
///   SECTION ROW [COL] : SIGMA [MU]
/// Sections are M, q (lcp) and Q, c, A, b (qp, lp); indices are 1-based and
/// missing cells are zero. `expected` fills in a missing type line and must
/// agree with one that is present.
InstanceFile parse_instance(std::string_view text, std::optional<ProblemKind> expected = std::nullopt);

std::string write_instance(const InstanceFile& file);
std::string write_instance(const UpLcpInstance& inst);

/// Exact value plus decimal text within eps of an endpoint.
struct EndpointText {
  std::string exact;    // "p/q" or "root of [coeffs] in [lo, hi]"
  std::string decimal;  // differs from the endpoint by less than eps
};
EndpointText describe_endpoint(const Endpoint& e, const Rational& eps);

/// Human-readable, deterministic report: one block per piece.
std::string write_partition(const Partition& p, const Rational& eps);
std::string write_qp_solution(const std::vector<QpSolutionPiece>& pieces, const Rational& alpha, const Rational& beta,
                              const Rational& eps);

/// CSV with header theta,variable,value; `samples` evenly spaced points per
/// piece, the piece ends inset by eps.
std::string emit_plot_data(const Partition& p, std::size_t samples, const Rational& eps);
std::string emit_plot_data(const std::vector<QpSolutionPiece>& pieces, std::size_t samples, const Rational& eps);

/// M(theta) = B0'B0 + theta B1'B1 on Theta = [0, 1], with B0 upper triangular
/// and nonsingular, so M(theta) is positive definite there. q is random affine.
UpLcpInstance generate_sufficient_instance(std::size_t h, double density, std::uint64_t seed);

}  // namespace upsolve
