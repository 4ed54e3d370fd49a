#include "upsolve/io.hpp"

#include <map>
#include <random>
#include <set>
#include <sstream>

namespace upsolve {

std::string to_string(ProblemKind k) {
  switch (k) {
    case ProblemKind::lcp: return "lcp";
    case ProblemKind::qp: return "qp";
    case ProblemKind::lp: return "lp";
  }
  return "lcp";
}

std::optional<ProblemKind> parse_problem_kind(std::string_view s) {
  if (s == "lcp") return ProblemKind::lcp;
  if (s == "qp") return ProblemKind::qp;
  if (s == "lp") return ProblemKind::lp;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Instance parsing

namespace {

struct Entry {
  std::size_t line;
  std::string section;
  std::size_t row, col;
  AffineScalar value;
};

std::vector<std::string> tokenize(std::string_view line) {
  std::string spaced;
  spaced.reserve(line.size() + 4);
  for (char ch : line) {
    if (ch == ':') {
      spaced += " : ";
    } else {
      spaced += ch;
    }
  }
  std::istringstream in(spaced);
  std::vector<std::string> out;
  for (std::string t; in >> t;) out.push_back(std::move(t));
  return out;
}

std::size_t parse_count(const std::string& s, std::size_t line, const std::string& what) {
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    if (s.empty() || s.front() == '-' || s.front() == '+') throw std::invalid_argument(s);
    v = std::stoull(s, &pos);
  } catch (const std::exception&) {
    throw ParseError(line, "invalid " + what + " '" + s + "'");
  }
  if (pos != s.size()) throw ParseError(line, "invalid " + what + " '" + s + "'");
  return static_cast<std::size_t>(v);
}

Rational parse_number(const std::string& s, std::size_t line) {
  try {
    return parse_rational(s);
  } catch (const NumberFormatError& e) {
    throw ParseError(line, e.what());
  }
}

struct SectionShape {
  std::size_t rows, cols;
};

class Builder {
 public:
  void header(const std::vector<std::string>& t, std::size_t line) {
    const std::string& key = t[0];
    if (key == "type") {
      if (t.size() != 2) throw ParseError(line, "expected 'type lcp|qp|lp'");
      auto k = parse_problem_kind(t[1]);
      if (!k) throw ParseError(line, "unknown problem type '" + t[1] + "'");
      set_once(kind_, *k, line, "type");
    } else if (key == "h" || key == "n" || key == "m") {
      if (t.size() != 2) throw ParseError(line, "expected '" + key + " N'");
      set_once(dims_[key], parse_count(t[1], line, key), line, key);
    } else if (key == "theta") {
      if (t.size() != 3) throw ParseError(line, "expected 'theta ALPHA BETA'");
      if (theta_) throw ParseError(line, "duplicate theta line");
      theta_ = {parse_number(t[1], line), parse_number(t[2], line)};
      if (theta_->first >= theta_->second) throw ParseError(line, "theta interval requires alpha < beta");
    } else {
      throw ParseError(line, "unknown keyword '" + key + "'");
    }
  }

  void entry(const std::vector<std::string>& t, std::size_t line) {
    auto colon = std::find(t.begin(), t.end(), std::string(":"));
    const auto nidx = static_cast<std::size_t>(colon - t.begin()) - 1;
    const auto nval = static_cast<std::size_t>(t.end() - colon) - 1;
    if (nidx < 1 || nidx > 2 || nval < 1 || nval > 2) {
      throw ParseError(line, "expected 'SECTION ROW [COL] : SIGMA [MU]'");
    }
    Entry e;
    e.line = line;
    e.section = t[0];
    e.row = parse_count(t[1], line, "row");
    e.col = nidx == 2 ? parse_count(t[2], line, "column") : 1;
    e.value.sigma = parse_number(*(colon + 1), line);
    if (nval == 2) e.value.mu = parse_number(*(colon + 2), line);
    entries_.push_back(std::move(e));
  }

  InstanceFile finish(std::optional<ProblemKind> expected) {
    if (kind_ && expected && *kind_ != *expected) {
      throw ParseError(0, "file declares type " + to_string(*kind_) + " but " + to_string(*expected) +
                              " was requested");
    }
    if (!kind_) kind_ = expected;
    if (!kind_) throw ParseError(0, "missing 'type' line");
    if (!theta_) throw ParseError(0, "missing 'theta' line");

    std::map<std::string, SectionShape> shapes;
    const bool lcp = *kind_ == ProblemKind::lcp;
    for (const auto& [key, v] : dims_) {
      if ((key == "h") != lcp) {
        throw ParseError(0, "dimension '" + key + "' does not apply to type " + to_string(*kind_));
      }
    }
    if (lcp) {
      const std::size_t h = require("h");
      if (h < 1) throw ParseError(0, "h must be at least 1");
      shapes = {{"M", {h, h}}, {"q", {h, 1}}};
    } else {
      const std::size_t n = require("n");
      const std::size_t m = dims_["m"].value_or(0);
      if (n < 1) throw ParseError(0, "n must be at least 1");
      shapes = {{"Q", {n, n}}, {"c", {n, 1}}, {"A", {m, n}}, {"b", {m, 1}}};
    }

    std::map<std::string, ParamMatrix> mats;
    for (const auto& [name, s] : shapes) {
      mats[name] = ParamMatrix(static_cast<Eigen::Index>(s.rows), static_cast<Eigen::Index>(s.cols));
    }
    std::set<std::tuple<std::string, std::size_t, std::size_t>> seen;
    for (const auto& e : entries_) {
      auto it = shapes.find(e.section);
      if (it == shapes.end()) {
        throw ParseError(e.line, "unknown section '" + e.section + "' for type " + to_string(*kind_));
      }
      const auto [rows, cols] = it->second;
      if (e.row < 1 || e.row > rows || e.col < 1 || e.col > cols) {
        throw ParseError(e.line, "index out of range for " + e.section + " (" + std::to_string(rows) + " x " +
                                     std::to_string(cols) + ")");
      }
      if (!seen.emplace(e.section, e.row, e.col).second) {
        throw ParseError(e.line, "duplicate entry " + e.section + " " + std::to_string(e.row) + " " +
                                     std::to_string(e.col));
      }
      mats[e.section].set(static_cast<Eigen::Index>(e.row - 1), static_cast<Eigen::Index>(e.col - 1), e.value);
    }

    InstanceFile out;
    out.kind = *kind_;
    if (lcp) {
      out.data = UpLcpInstance{mats["M"], mats["q"], theta_->first, theta_->second};
      return out;
    }
    UpQpInstance qp;
    qp.n = require("n");
    qp.m = dims_["m"].value_or(0);
    qp.Q = mats["Q"];
    qp.c = mats["c"];
    qp.A = mats["A"];
    qp.b = mats["b"];
    qp.alpha = theta_->first;
    qp.beta = theta_->second;
    if (qp.Q.sigma() != qp.Q.sigma().transpose() || qp.Q.mu() != qp.Q.mu().transpose()) {
      throw ParseError(0, "Q must be symmetric");
    }
    if (*kind_ == ProblemKind::lp && !qp.is_lp()) throw ParseError(0, "type lp does not allow Q entries");
    out.data = std::move(qp);
    return out;
  }

 private:
  template <typename T>
  static void set_once(std::optional<T>& slot, T v, std::size_t line, const std::string& what) {
    if (slot) throw ParseError(line, "duplicate '" + what + "' line");
    slot = std::move(v);
  }

  std::size_t require(const std::string& key) {
    auto it = dims_.find(key);
    if (it == dims_.end() || !it->second) throw ParseError(0, "missing '" + key + "' line");
    return *it->second;
  }

  std::optional<ProblemKind> kind_;
  std::map<std::string, std::optional<std::size_t>> dims_;
  std::optional<std::pair<Rational, Rational>> theta_;
  std::vector<Entry> entries_;
};

}  // namespace

InstanceFile parse_instance(std::string_view text, std::optional<ProblemKind> expected) {
  Builder b;
  std::size_t line_no = 0;
  while (!text.empty()) {
    auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const auto tokens = tokenize(line);
    if (tokens.empty()) continue;
    if (std::find(tokens.begin(), tokens.end(), ":") != tokens.end()) {
      b.entry(tokens, line_no);
    } else {
      b.header(tokens, line_no);
    }
  }
  return b.finish(expected);
}

namespace {

void write_cells(std::ostringstream& out, const std::string& name, const ParamMatrix& m, bool vector) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      const AffineScalar v = m(i, j);
      if (v.sigma == 0 && v.mu == 0) continue;
      out << name << ' ' << i + 1;
      if (!vector) out << ' ' << j + 1;
      out << " : " << to_string(v.sigma);
      if (v.mu != 0) out << ' ' << to_string(v.mu);
      out << '\n';
    }
  }
}

}  // namespace

std::string write_instance(const InstanceFile& file) {
  std::ostringstream out;
  out << "type " << to_string(file.kind) << '\n';
  if (file.kind == ProblemKind::lcp) {
    const auto& in = file.lcp();
    out << "h " << in.h() << '\n';
    out << "theta " << to_string(in.alpha) << ' ' << to_string(in.beta) << '\n';
    write_cells(out, "M", in.M, false);
    write_cells(out, "q", in.q, true);
  } else {
    const auto& qp = file.qp();
    out << "n " << qp.n << '\n' << "m " << qp.m << '\n';
    out << "theta " << to_string(qp.alpha) << ' ' << to_string(qp.beta) << '\n';
    write_cells(out, "Q", qp.Q, false);
    write_cells(out, "c", qp.c, true);
    write_cells(out, "A", qp.A, false);
    write_cells(out, "b", qp.b, true);
  }
  return out.str();
}

std::string write_instance(const UpLcpInstance& inst) { return write_instance(InstanceFile{ProblemKind::lcp, inst}); }

// ---------------------------------------------------------------------------
// Reports

namespace {

Rational pow10_rational(unsigned k) {
  Rational r = 1;
  for (unsigned i = 0; i < k; ++i) r *= 10;
  return r;
}

}  // namespace

EndpointText describe_endpoint(const Endpoint& e, const Rational& eps) {
  const unsigned digits = decimal_digits_for(eps / 2);
  if (e.is_rational()) return {to_string(e.rational()), to_decimal(e.rational(), digits)};
  // Refine well below the last printed digit so the rounding is faithful.
  const Endpoint r = e.refined(std::min(eps / 2, Rational(1, 100) / pow10_rational(digits)));
  std::string coeffs;
  for (const auto& c : r.poly().coefficients()) {
    if (!coeffs.empty()) coeffs += ", ";
    coeffs += c.str();
  }
  return {"root of [" + coeffs + "] in [" + to_string(r.lo()) + ", " + to_string(r.hi()) + "]",
          to_decimal(r.approximation(), digits)};
}

namespace {

std::string coefficient_list(const Poly& p) {
  if (p.is_zero()) return "[0]";
  std::string s = "[";
  for (std::size_t i = 0; i < p.coefficients().size(); ++i) {
    if (i) s += ", ";
    s += to_string(p.coefficients()[i]);
  }
  return s + "]";
}

void write_interval(std::ostringstream& out, const ParamInterval& iv, const Rational& eps) {
  const auto lo = describe_endpoint(iv.lo, eps);
  const auto hi = describe_endpoint(iv.hi, eps);
  out << "  lo " << lo.decimal << " = " << lo.exact << '\n';
  out << "  hi " << hi.decimal << " = " << hi.exact << '\n';
}

// Interior sample points of a piece, the ends inset by eps.
std::vector<Rational> sample_points(const ParamInterval& iv, std::size_t samples, const Rational& eps) {
  if (samples < 2) throw std::invalid_argument("plot data needs at least 2 samples per piece");
  Rational a = iv.lo.is_rational() ? iv.lo.rational() : iv.lo.refined(eps).hi();
  Rational b = iv.hi.is_rational() ? iv.hi.rational() : iv.hi.refined(eps).lo();
  a += eps;
  b -= eps;
  if (a >= b) return {select_probe(iv)};
  std::vector<Rational> out;
  out.reserve(samples);
  for (std::size_t k = 0; k < samples; ++k) {
    out.push_back(a + (b - a) * static_cast<long>(k) / static_cast<long>(samples - 1));
  }
  return out;
}

}  // namespace

std::string write_partition(const Partition& p, const Rational& eps) {
  std::ostringstream out;
  out << "partition h " << p.h << " theta " << to_string(p.alpha) << ' ' << to_string(p.beta) << " eps "
      << to_string(eps) << '\n';
  out << "pieces " << p.pieces.size() << '\n';
  for (std::size_t k = 0; k < p.pieces.size(); ++k) {
    const auto& pc = p.pieces[k];
    out << '\n' << "piece " << k + 1 << '\n';
    out << "  basis " << pc.basis.to_string() << '\n';
    write_interval(out, pc.interval, eps);
    out << "  denominator " << coefficient_list(pc.funcs.sign * pc.funcs.det) << '\n';
    for (std::size_t i = 0; i < pc.basis.size(); ++i) {
      out << "  " << pc.basis.name(i) << ' ' << coefficient_list(pc.funcs.sign * pc.funcs.numerators[i]) << '\n';
    }
  }
  return out.str();
}

std::string write_qp_solution(const std::vector<QpSolutionPiece>& pieces, const Rational& alpha, const Rational& beta,
                              const Rational& eps) {
  std::ostringstream out;
  out << "qp solution theta " << to_string(alpha) << ' ' << to_string(beta) << " eps " << to_string(eps) << '\n';
  out << "pieces " << pieces.size() << '\n';
  auto section = [&](const std::string& title, const std::string& prefix, const std::vector<Poly>& fs) {
    if (fs.empty()) return;
    out << "  " << title << '\n';
    for (std::size_t i = 0; i < fs.size(); ++i) {
      out << "    " << prefix << i + 1 << ' ' << coefficient_list(fs[i]) << '\n';
    }
  };
  for (std::size_t k = 0; k < pieces.size(); ++k) {
    const auto& pc = pieces[k];
    out << '\n' << "piece " << k + 1 << '\n';
    out << "  basis " << pc.basis.to_string() << '\n';
    write_interval(out, pc.interval, eps);
    out << "  denominator " << coefficient_list(pc.denominator) << '\n';
    section("x", "x", pc.x);
    section("slack", "s", pc.primal_slack);
    section("dual constraints", "lambda", pc.dual_constraints);
    section("dual bounds", "u", pc.dual_nonneg);
  }
  return out.str();
}

std::string emit_plot_data(const Partition& p, std::size_t samples, const Rational& eps) {
  const unsigned digits = decimal_digits_for(eps / 2);
  std::ostringstream out;
  out << "theta,variable,value\n";
  for (const auto& pc : p.pieces) {
    for (const auto& t : sample_points(pc.interval, samples, eps)) {
      const BasicSolution s = pc.solution_at(t);
      const std::string ts = to_decimal(t, digits);
      for (Eigen::Index i = 0; i < s.w.size(); ++i) out << ts << ",w" << i + 1 << ',' << to_decimal(s.w(i), digits) << '\n';
      for (Eigen::Index i = 0; i < s.z.size(); ++i) out << ts << ",z" << i + 1 << ',' << to_decimal(s.z(i), digits) << '\n';
    }
  }
  return out.str();
}

std::string emit_plot_data(const std::vector<QpSolutionPiece>& pieces, std::size_t samples, const Rational& eps) {
  const unsigned digits = decimal_digits_for(eps / 2);
  std::ostringstream out;
  out << "theta,variable,value\n";
  auto rows = [&](const std::string& ts, const std::string& prefix, const RationalVector& v) {
    for (Eigen::Index i = 0; i < v.size(); ++i) out << ts << ',' << prefix << i + 1 << ',' << to_decimal(v(i), digits) << '\n';
  };
  for (const auto& pc : pieces) {
    for (const auto& t : sample_points(pc.interval, samples, eps)) {
      const auto v = pc.at(t);
      const std::string ts = to_decimal(t, digits);
      rows(ts, "x", v.x);
      rows(ts, "s", v.primal_slack);
      rows(ts, "lambda", v.dual_constraints);
      rows(ts, "u", v.dual_nonneg);
    }
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Generator

UpLcpInstance generate_sufficient_instance(std::size_t h, double density, std::uint64_t seed) {
  if (h < 1) throw std::invalid_argument("generator needs h >= 1");
  if (!(density > 0.0 && density <= 1.0)) throw std::invalid_argument("density must lie in (0, 1]");
  std::mt19937_64 rng(seed);
  // Explicit mappings keep instances identical across standard libraries.
  auto pick = [&](long lo, long hi) { return lo + static_cast<long>(rng() % static_cast<std::uint64_t>(hi - lo + 1)); };
  auto keep = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53 < density; };

  const auto n = static_cast<Eigen::Index>(h);
  RationalMatrix B0 = RationalMatrix::Zero(n, n);
  RationalMatrix B1 = RationalMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    long d = pick(1, 3);
    B0(i, i) = pick(0, 1) ? d : -d;
    for (Eigen::Index j = i + 1; j < n; ++j) {
      if (keep()) B0(i, j) = pick(-3, 3);
    }
    for (Eigen::Index j = 0; j < n; ++j) {
      if (keep()) B1(i, j) = pick(-2, 2);
    }
  }
  RationalMatrix qs(n, 1), qm(n, 1);
  for (Eigen::Index i = 0; i < n; ++i) {
    qs(i, 0) = pick(-5, 5);
    qm(i, 0) = pick(-5, 5);
  }
  UpLcpInstance inst;
  inst.M = ParamMatrix(B0.transpose() * B0, B1.transpose() * B1);
  inst.q = ParamMatrix(std::move(qs), std::move(qm));
  inst.alpha = 0;
  inst.beta = 1;
  return inst;
}

}  // namespace upsolve
