// fracgraph command-line front end.
//
// Exit codes: 0 pass, 1 internal error, 2 configuration error,
// 3 verification or consistency failure.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fracgraph/config.hpp"
#include "fracgraph/eigensolver.hpp"
#include "fracgraph/errors.hpp"
#include "fracgraph/expression.hpp"
#include "fracgraph/mittag.hpp"
#include "fracgraph/operator.hpp"
#include "fracgraph/report.hpp"

using namespace fracgraph;

namespace {

enum Exit { kPass = 0, kInternal = 1, kConfig = 2, kFailed = 3 };

struct Overrides {
  std::string config;
  std::string out = ".";
  std::optional<int> n;
  std::optional<double> grading;
  std::optional<double> alpha;
  std::optional<double> tol;
  std::optional<long long> seed;
  bool strict = false;
  bool permissive = false;
  std::optional<double> k1, b1, c1;
};

void add_common(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config, "Run configuration file")->required()->check(CLI::ExistingFile);
  cmd->add_option("--out", o.out, "Output directory");
  cmd->add_option("--n", o.n, "Grid intervals per edge");
  cmd->add_option("--grading", o.grading, "Grid grading exponent (>= 1)");
  cmd->add_option("--alpha", o.alpha, "Fractional order in (0, 1)");
  cmd->add_option("--tol", o.tol, "Pass/fail tolerance");
}

RunConfig configure(const Overrides& o, bool solve) {
  RunConfig cfg = load_run_config(o.config);
  if (o.alpha) cfg.alpha = *o.alpha;
  if (o.n) cfg.grid.intervals = *o.n;
  if (o.grading) cfg.grid.grading = *o.grading;
  if (o.tol) (solve ? cfg.solve.tol : cfg.check.tol) = *o.tol;
  if (o.seed) {
    if (*o.seed < 0) throw ConfigError("--seed", 0, "", "must be non-negative");
    cfg.check.seed = static_cast<std::uint64_t>(*o.seed);
  }
  if (o.strict) cfg.solve.strict = true;
  if (o.permissive) cfg.solve.strict = false;
  if (o.k1) cfg.solve.k1 = *o.k1;
  if (o.b1) cfg.solve.b1 = *o.b1;
  if (o.c1) cfg.solve.c1 = *o.c1;
  validate(cfg);
  if (solve) {
    if (cfg.topology != Topology::star) throw ConfigError(cfg.source, 0, "graph.topology", "solve needs a star graph");
    if (cfg.solve.k1 == 0.0 || !std::isfinite(cfg.solve.k1))
      throw ConfigError(cfg.source, 0, "solve.k1", "must be a nonzero real number");
  }
  return cfg;
}

std::string out_path(const std::string& dir, const std::string& name) {
  std::filesystem::create_directories(dir);
  return (std::filesystem::path(dir) / name).string();
}

int cmd_check_sa(const Overrides& o) {
  const RunConfig cfg = configure(o, false);
  const MetricGraph g = make_graph(cfg);
  CsvTable conv("n: grid intervals per edge; omega and boundary form in length^(1-alpha) for dimensionless test functions",
                {"n", "max_abs_omega", "max_abs_omega_minus_boundary_form", "violation_abs_omega"});
  std::optional<VerificationReport> finest;
  for (int level = cfg.check.levels - 1; level >= 0; --level) {
    GridSpec spec = cfg.grid;
    spec.intervals = cfg.grid.intervals >> level;
    VerificationReport r = verify_self_adjoint(g, cfg.check.trials, cfg.check.tol, cfg.check.seed, spec);
    double omega = 0.0;
    double disc = 0.0;
    for (const auto& row : r.rows) {
      omega = std::max(omega, row.omega_abs);
      disc = std::max(disc, row.discrepancy);
    }
    conv.add_row({std::to_string(spec.intervals), sci(omega), sci(disc), sci(r.violation.omega_abs)});
    if (level == 0) finest = std::move(r);
  }
  write_atomic(out_path(o.out, "check_sa_report.txt"), format_report(*finest, g));
  write_atomic(out_path(o.out, "check_sa_convergence.csv"), conv.str());
  std::cout << "check-sa: " << (finest->passed ? "PASS" : "FAIL") << " (" << finest->rows.size()
            << " trials, violation |omega| = " << sci(finest->violation.omega_abs) << ")\n";
  return finest->passed ? kPass : kFailed;
}

int cmd_solve(const Overrides& o) {
  const RunConfig cfg = configure(o, true);
  const MetricGraph g = make_graph(cfg);
  SolutionOptions opt;
  opt.grid = cfg.grid;
  opt.tol = cfg.solve.tol;
  opt.strict = cfg.solve.strict;
  opt.volterra_sweeps = cfg.solve.sweeps;
  const SolutionReport r = verify_eigen_solution(g, cfg.solve.k1, cfg.solve.b1, cfg.solve.c1, opt);

  CsvTable csv("s: distance from the central vertex (length units); phi: solution value (dimensionless); "
               "nodes where phi is singular are omitted",
               {"edge", "s", "re_phi", "im_phi"});
  for (const auto& e : g.edges()) {
    const auto& f = r.solution.at(e.id);
    for (std::size_t i = 0; i < f.size(); ++i) {
      const cplx v = f.at(i);
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) continue;
      csv.add_row({e.id, sci(f.grid()[i]), sci(v.real()), sci(v.imag())});
    }
  }
  write_atomic(out_path(o.out, "solve_report.txt"), format_report(r, g));
  write_atomic(out_path(o.out, "solve_solution.csv"), csv.str());
  std::cout << "solve: " << (r.passed ? "PASS" : "FAIL") << " (constraints "
            << (r.params.consistent ? "consistent" : "inconsistent") << ", sum b/w = " << sci(r.params.flux_residual)
            << ")\n";
  if (!cfg.solve.strict) return kPass;
  return r.passed ? kPass : kFailed;
}

int cmd_ml(double alpha, double beta, const std::vector<double>& zs, const std::string& out) {
  const MLParams p(alpha, beta);
  std::ostringstream os;
  os << "# E_{alpha,beta}(z), alpha = " << alpha << ", beta = " << beta << "\n";
  os << "z,value\n";
  CsvTable csv("z and E_{alpha,beta}(z) are dimensionless", {"z", "value"});
  for (double z : zs) {
    const double v = mittag_leffler(p, z);
    char line[96];
    std::snprintf(line, sizeof line, "%.10g,%.10g\n", z, v);
    os << line;
    csv.add_row({sci(z), sci(v)});
  }
  std::cout << os.str();
  if (!out.empty()) write_atomic(out_path(out, "ml.csv"), csv.str());
  return kPass;
}

struct FracArgs {
  std::string function;
  double alpha = 0.5;
  std::string side = "left";
  std::string kind = "integral";
  double length = 1.0;
  int n = 256;
  double grading = 2.0;
  std::string out;
};

int cmd_frac(const FracArgs& a) {
  std::vector<Monomial> expr;
  try {
    expr = parse_expression(a.function);
  } catch (const DomainError& e) {
    throw ConfigError("--function", 0, "", e.what());
  }
  if (!(a.alpha > 0.0 && a.alpha < 1.0)) throw ConfigError("--alpha", 0, "", "must lie strictly between 0 and 1");
  if (!(a.length > 0.0)) throw ConfigError("--length", 0, "", "must be positive");
  if (a.n < 7) throw ConfigError("--n", 0, "", "must be at least 7");
  if (!(a.grading >= 1.0)) throw ConfigError("--grading", 0, "", "must be >= 1");
  const auto grid = Grid::graded(a.length, a.n, a.grading);
  const GridFunction f = to_grid_function(expr, grid);
  const FracOrder order(a.alpha);
  const bool left = a.side == "left";
  GridFunction r = a.kind == "integral" ? (left ? frac_integral_left(f, order) : frac_integral_right(f, order))
                                        : (left ? frac_deriv_left(f, order) : frac_deriv_right(f, order));
  CsvTable csv("x: position (length units); value: " + a.side + " " + a.kind + " of order " + sci(a.alpha) +
                   " of " + a.function + "; nodes where the value is singular are omitted",
               {"x", "value"});
  for (std::size_t i = 0; i < r.size(); ++i) {
    const cplx v = r.at(i);
    if (!std::isfinite(v.real())) continue;
    csv.add_row({sci((*grid)[i]), sci(v.real())});
  }
  if (a.out.empty()) {
    std::cout << csv.str();
  } else {
    write_atomic(out_path(a.out, "frac.csv"), csv.str());
  }
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fractional operators on metric graphs"};
  app.require_subcommand(1);

  Overrides sa;
  auto* check = app.add_subcommand("check-sa", "Numerical self-adjointness check of the vertex conditions");
  add_common(check, sa);
  check->add_option("--seed", sa.seed, "Random seed for the trial functions");

  Overrides so;
  auto* solve = app.add_subcommand("solve", "Build and check eigen-solutions on a star graph");
  add_common(solve, so);
  auto* strict = solve->add_flag("--strict", so.strict, "Fail on inconsistent constraints");
  auto* permissive = solve->add_flag("--permissive", so.permissive, "Report inconsistencies without failing");
  strict->excludes(permissive);
  solve->add_option("--k1", so.k1, "Reference eigen-parameter k1 (nonzero)");
  solve->add_option("--b1", so.b1, "Reference constant b1");
  solve->add_option("--c1", so.c1, "Reference constant c1");
  solve->add_option("--seed", so.seed, "Accepted for uniformity; solve is deterministic");

  double ml_alpha = 0.5, ml_beta = 1.0;
  std::vector<double> ml_z;
  std::string ml_out;
  auto* ml = app.add_subcommand("ml", "Evaluate the Mittag-Leffler function E_{alpha,beta}(z)");
  ml->add_option("--alpha", ml_alpha, "alpha in (0, 2]")->required();
  ml->add_option("--beta", ml_beta, "beta > 0")->required();
  ml->add_option("--z", ml_z, "Arguments")->required()->delimiter(',');
  ml->add_option("--out", ml_out, "Also write ml.csv to this directory");

  FracArgs fa;
  auto* frac = app.add_subcommand("frac", "Fractional integral or derivative of a power-sum expression");
  frac->add_option("--function", fa.function, "Expression in t, e.g. \"1 + 2*t^0.5\"")->required();
  frac->add_option("--alpha", fa.alpha, "Order in (0, 1)");
  frac->add_option("--side", fa.side, "left or right")->check(CLI::IsMember({"left", "right"}));
  frac->add_option("--kind", fa.kind, "integral or derivative")->check(CLI::IsMember({"integral", "derivative"}));
  frac->add_option("--length", fa.length, "Interval length");
  frac->add_option("--n", fa.n, "Grid intervals");
  frac->add_option("--grading", fa.grading, "Grid grading exponent");
  frac->add_option("--out", fa.out, "Write frac.csv to this directory instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kConfig;
  }

  try {
    if (*check) return cmd_check_sa(sa);
    if (*solve) return cmd_solve(so);
    if (*ml) return cmd_ml(ml_alpha, ml_beta, ml_z, ml_out);
    if (*frac) return cmd_frac(fa);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const InconsistentConstraints& e) {
    std::cerr << "inconsistent constraints: " << e.what() << "\n";
    return kFailed;
  } catch (const DomainError& e) {
    std::cerr << "invalid parameter: " << e.what() << "\n";
    return *ml ? kConfig : kInternal;
  } catch (const TraceError& e) {
    std::cerr << "verification failed: " << e.what() << "\n";
    return kFailed;
  } catch (const AccuracyLoss& e) {
    std::cerr << "verification failed: " << e.what() << "\n";
    return kFailed;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kInternal;
}
