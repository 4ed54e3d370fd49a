// upsolve: command-line front end for the uni-parametric LCP/QP/LP solver.
#include "upsolve/io.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

constexpr int kSolved = 0;
constexpr int kParseError = 2;
constexpr int kAssumption = 3;
constexpr int kInternal = 4;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw upsolve::ParseError(0, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
}

struct SolveArgs {
  std::string type;
  std::string input;
  std::string output;
  std::string tol = "1/1000000000";
  unsigned threads = 1;
  std::size_t pivot_limit = 0;
  std::string plot;
  std::size_t samples = 11;
  bool stats = false;
};

int run_solve(const SolveArgs& a) {
  using namespace upsolve;
  std::optional<ProblemKind> kind;
  if (!a.type.empty()) kind = parse_problem_kind(a.type);

  InstanceFile file;
  SolverOptions opts;
  try {
    file = parse_instance(read_file(a.input), kind);
    opts.eps = parse_rational(a.tol);
    if (opts.eps.sign() <= 0) throw ParseError(0, "--tol must be positive");
  } catch (const ParseError& e) {
    std::cerr << "upsolve: " << a.input << ": " << e.what() << '\n';
    return kParseError;
  } catch (const NumberFormatError& e) {
    std::cerr << "upsolve: --tol: " << e.what() << '\n';
    return kParseError;
  }
  opts.workers = std::max(1u, a.threads);
  opts.pivot_limit = a.pivot_limit;

  try {
    SolveReport report;
    std::string text, plot;
    if (file.kind == ProblemKind::lcp) {
      const Partition p = solve_uplcp(file.lcp(), opts, &report);
      text = write_partition(p, opts.eps);
      if (!a.plot.empty()) plot = emit_plot_data(p, a.samples, opts.eps);
    } else {
      const UpQpInstance& qp = file.qp();
      for (const auto& w : convexity_diagnostics(qp)) std::cerr << "upsolve: warning: " << w << '\n';
      auto [lcp, map] = file.kind == ProblemKind::lp ? lp_to_lcp(qp) : qp_to_lcp(qp);
      const Partition p = solve_uplcp(lcp, opts, &report);
      const auto pieces = map_solution_back(p, map);
      text = write_qp_solution(pieces, qp.alpha, qp.beta, opts.eps);
      if (!a.plot.empty()) plot = emit_plot_data(pieces, a.samples, opts.eps);
    }
    for (const auto& d : report.diagnostics) std::cerr << "upsolve: note: " << d << '\n';
    if (a.stats) {
      std::cerr << "upsolve: intervals processed " << report.intervals_processed << ", singletons discarded "
                << report.singletons_discarded << ", basis computations " << report.basis_computations << '\n';
    }
    write_text(a.output, text);
    if (!a.plot.empty()) write_text(a.plot, plot);
    return kSolved;
  } catch (const AssumptionViolation& e) {
    std::cerr << "upsolve: assumption violated ("
              << (e.kind() == AssumptionViolation::Kind::sufficiency ? "sufficiency" : "feasibility")
              << "): " << e.what() << '\n';
    return kAssumption;
  } catch (const InternalError& e) {
    std::cerr << "upsolve: internal error: " << e.what() << '\n';
    return kInternal;
  } catch (const std::invalid_argument& e) {
    std::cerr << "upsolve: " << e.what() << '\n';
    return kParseError;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Partition the parameter interval of a uni-parametric LCP, QP or LP into invariancy intervals"};
  app.require_subcommand(0, 1);

  SolveArgs s;
  app.add_option("--type", s.type, "Problem type")->check(CLI::IsMember({"lcp", "qp", "lp"}));
  app.add_option("--input", s.input, "Instance file");
  app.add_option("--output", s.output, "Report file (default: stdout)");
  app.add_option("--tol", s.tol, "Output tolerance eps, e.g. 1/1000 or 1e-6");
  app.add_option("--threads", s.threads, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--pivot-limit", s.pivot_limit, "Criss-cross pivot limit (0: 10*2^min(h,20))");
  app.add_option("--plot", s.plot, "Write theta,variable,value CSV here");
  app.add_option("--samples", s.samples, "Plot samples per piece")->check(CLI::Range(2, 100000));
  app.add_flag("--stats", s.stats, "Print solver counters to stderr");

  auto* gen = app.add_subcommand("gen", "Generate a sufficient upLCP instance on [0, 1]");
  gen->set_help_flag("--help", "Print this help message and exit");
  std::size_t h = 0;
  std::uint64_t seed = 0;
  double density = 1.0;
  std::string out;
  gen->add_option("--h", h, "Dimension")->required()->check(CLI::PositiveNumber);
  gen->add_option("--seed", seed, "Random seed")->required();
  gen->add_option("--out", out, "Output file")->required();
  gen->add_option("--density", density, "Off-diagonal fill probability in (0, 1]");

  CLI11_PARSE(app, argc, argv);

  if (*gen) {
    try {
      write_text(out, upsolve::write_instance(upsolve::generate_sufficient_instance(h, density, seed)));
    } catch (const std::exception& e) {
      std::cerr << "upsolve gen: " << e.what() << '\n';
      return kParseError;
    }
    return kSolved;
  }
  if (s.input.empty()) {
    std::cerr << "upsolve: --input is required\n" << app.help();
    return kParseError;
  }
  try {
    return run_solve(s);
  } catch (const std::exception& e) {
    std::cerr << "upsolve: " << e.what() << '\n';
    return kInternal;
  }
}
