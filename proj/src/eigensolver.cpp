#include "fracgraph/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "fracgraph/errors.hpp"
#include "fracgraph/mittag.hpp"

namespace fracgraph {

const EdgeConstants& SpectralParams::at(const std::string& edge) const {
  auto it = per_edge.find(edge);
  if (it == per_edge.end()) throw DomainError("no spectral constants for edge " + edge);
  return it->second;
}

namespace {

const Incidence& center_incidence(const MetricGraph& g, const std::string& edge) {
  for (const auto& c : g.conditions())
    if (c.kind == ConditionKind::weighted_kirchhoff)
      for (const auto& inc : c.incidences)
        if (inc.edge == edge) return inc;
  throw DomainError("edge " + edge + " has no Kirchhoff incidence");
}

void require_star(const MetricGraph& g) {
  if (g.topology() != Topology::star) throw DomainError("spectral constants are defined on star graphs only");
}

double relative_spread(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  const double scale = std::max(std::abs(*lo), std::abs(*hi));
  return scale == 0.0 ? 0.0 : (*hi - *lo) / scale;
}

bool in_window(double x, double len) { return x >= kWindowLow * len && x <= kWindowHigh * len; }

}  // namespace

SpectralParams assemble_constraints(const MetricGraph& star, double k1, double b1, double c1, bool strict) {
  require_star(star);
  if (k1 == 0.0 || !std::isfinite(k1)) throw DomainError("k1 must be a nonzero real number (the k-sum divides by k_j)");
  if (!std::isfinite(b1) || !std::isfinite(c1)) throw DomainError("b1 and c1 must be finite");
  const double a = star.order().value();
  const Edge& ref = star.edge("1");
  const double l1 = ref.length;
  const double w1 = center_incidence(star, ref.id).weight;

  SpectralParams p;
  p.alpha = star.order();
  p.reference_k = k1;
  double flux = 0.0;
  double ksum = 0.0;
  for (const auto& e : star.edges()) {
    const double w = center_incidence(star, e.id).weight;
    const double r = l1 / e.length;
    EdgeConstants ec;
    ec.k = k1 * std::pow(r, a);
    ec.b = b1 * (w1 / w) * std::pow(r, a - 1.0);
    ec.c = c1 * (w1 / w) * std::pow(r, a - 1.0);
    flux += ec.b / w;
    ksum += ec.b / (e.length * ec.k);
    p.per_edge.emplace(e.id, ec);
  }
  p.flux_residual = std::abs(flux);
  p.k_sum_residual = std::abs(ksum);
  p.consistent = p.flux_residual <= kConstraintTol && p.k_sum_residual <= kConstraintTol;
  if (strict && p.flux_residual > kConstraintTol) {
    std::ostringstream os;
    os << "constraint sum_j b_j/w_j = 0 violated: residual " << p.flux_residual;
    throw InconsistentConstraints(os.str(), p.flux_residual);
  }
  return p;
}

std::vector<double> weights_from_b(FracOrder alpha, const std::vector<double>& lengths, const std::vector<double>& b,
                                   double w1) {
  if (lengths.size() != b.size() || lengths.empty()) throw DomainError("weights_from_b: size mismatch");
  const double a = alpha.value();
  std::vector<double> w(b.size());
  for (std::size_t j = 0; j < b.size(); ++j) {
    if (b[j] == 0.0) throw DomainError("weights_from_b: b_j must be nonzero");
    w[j] = w1 * (b[0] / b[j]) * std::pow(lengths[0] / lengths[j], a - 1.0);
  }
  return w;
}

GridFunction build_solution(const Edge& edge, const EdgeConstants& p, FracOrder alpha,
                            std::shared_ptr<const Grid> grid) {
  if (std::abs(grid->length() - edge.length) > 1e-12 * edge.length)
    throw DomainError("build_solution: grid does not span edge " + edge.id);
  const double a = alpha.value();
  const double l = edge.length;

  // c d^{a-1} E_{a,a}(k d^a) = c sum_n k^n d^{a(n+1)-1} / Gamma(a(n+1)); the
  // first `ns` terms are singular at d = 0, the tail is
  // c k^ns d^{a(ns+1)-1} E_{a,a(ns+1)}(k d^a).
  int ns = 0;
  while (a * (ns + 1) - 1.0 < 0.0) ++ns;
  std::vector<PowerTerm> at_l;
  if (p.c != 0.0) {
    for (int n = 0; n < ns; ++n) {
      const double coef = p.c * std::pow(p.k, n) * rgamma(a * (n + 1));
      if (coef != 0.0) at_l.push_back({coef, a * (n + 1) - 1.0});
    }
  }
  const MLParams tail(a, a * (ns + 1));
  const MLParams two(a, 2.0);
  const double tail_exp = a * (ns + 1) - 1.0;
  const double bscale = p.b * std::pow(l, a - 2.0) * gamma(2.0 - a);

  std::vector<cplx> vals(grid->size());
  for (std::size_t i = 0; i < grid->size(); ++i) {
    const double d = std::max(l - (*grid)[i], 0.0);
    const double z = p.k * std::pow(d, a);
    double v = 0.0;
    if (p.c != 0.0) v += p.c * std::pow(p.k, ns) * std::pow(d, tail_exp) * mittag_leffler(tail, z);
    if (p.b != 0.0) v += bscale * d * mittag_leffler(two, z);
    vals[i] = v;
  }
  return GridFunction(std::move(grid), std::move(vals), {}, std::move(at_l));
}

GridFunction build_solution(const Edge& edge, const EdgeConstants& p, FracOrder alpha, const GridSpec& spec) {
  return build_solution(edge, p, alpha, Grid::graded(edge.length, spec));
}

double interior_distance(const GridFunction& f, const GridFunction& g) {
  const Grid& grid = f.grid();
  if (!(grid == g.grid())) throw DomainError("interior_distance: functions on different grids");
  double m = 0.0;
  for (std::size_t i = 1; i + 1 < grid.size(); ++i)
    if (in_window(grid[i], grid.length())) m = std::max(m, std::abs(f.at(i) - g.at(i)));
  return m;
}

VolterraResult volterra_solve(const Edge& edge, const EdgeConstants& p, const FracCalculus& calc,
                              const GridFunction& start, int sweeps) {
  if (sweeps < 1) throw DomainError("volterra_solve: sweeps must be positive");
  const double a = calc.order().value();
  const auto& grid = calc.grid_ptr();
  if (!(start.grid() == *grid)) throw DomainError("volterra_solve: start is not on the edge grid");
  if (std::abs(grid->length() - edge.length) > 1e-12 * edge.length)
    throw DomainError("volterra_solve: grid does not span edge " + edge.id);

  std::vector<PowerTerm> source_terms;
  if (p.b != 0.0) source_terms.push_back({p.b * rgamma(a), a - 1.0});
  const GridFunction source(grid, std::vector<cplx>(grid->size(), 0.0), source_terms, {});

  VolterraResult r{start, 0, false, 0.0, 0.0, {}};
  double prev_change = 0.0;
  for (int m = 0; m < sweeps; ++m) {
    try {
      const GridFunction& phi = r.solution;
      const GridFunction rhs = calc.deriv_right(phi) - phi * cplx(p.k);
      GridFunction next = source - frac_integral_left(rhs, a);
      const double change = interior_distance(next, phi);
      r.solution = std::move(next);
      r.sweeps = m + 1;
      r.contraction = prev_change > 0.0 ? change / prev_change : 0.0;
      r.last_change = change;
      prev_change = change;
      if (change < kVolterraStop) {
        r.converged = true;
        break;
      }
    } catch (const DomainError& e) {
      r.failure = std::string("sweep ") + std::to_string(m + 1) + ": " + e.what();
      break;
    }
  }
  return r;
}

double reduced_residual(const Edge& edge, const GridFunction& phi, const EdgeConstants& p, const FracCalculus& calc) {
  const Grid& grid = phi.grid();
  if (!(grid == *calc.grid_ptr())) throw DomainError("reduced_residual: function is not on the calculus grid");
  const double a = calc.order().value();
  const double l = edge.length;
  const GridFunction d = calc.deriv_right(phi);
  const double scale = p.b * std::pow(l, a - 2.0);
  double m = 0.0;
  for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
    const double s = grid[i];
    if (!in_window(s, l)) continue;
    const cplx res = d.at(i) - p.k * phi.at(i) - scale * std::pow(l - s, 1.0 - a);
    m = std::max(m, std::abs(res));
  }
  return m;
}

double reduced_residual(const Edge& edge, const GridFunction& phi, const EdgeConstants& p, FracOrder alpha) {
  return reduced_residual(edge, phi, p, FracCalculus(phi.grid_ptr(), alpha));
}

SolutionReport verify_eigen_solution(const MetricGraph& star, double k1, double b1, double c1,
                                     const SolutionOptions& opt) {
  SolutionReport rep;
  rep.params = assemble_constraints(star, k1, b1, c1, opt.strict);
  rep.tol = opt.tol;
  rep.grid_n = opt.grid.intervals;
  const FracOrder alpha = star.order();
  const double a = alpha.value();

  GraphCalculus calc(star);
  std::map<double, std::shared_ptr<const Grid>> grids;
  std::map<std::string, GridFunction> parts;
  std::vector<double> kc, bc, cc;
  rep.residuals_ok = true;
  for (const auto& e : star.edges()) {
    auto& grid = grids[e.length];
    if (!grid) grid = Grid::graded(e.length, opt.grid);
    const auto& ec = rep.params.at(e.id);
    const double w = center_incidence(star, e.id).weight;
    const FracCalculus& fc = calc.on(grid);
    GridFunction phi = build_solution(e, ec, alpha, grid);

    EdgeSolutionRow row;
    row.edge = e.id;
    row.length = e.length;
    row.weight = w;
    row.constants = ec;
    row.residual = reduced_residual(e, phi, ec, fc);
    const auto vr = volterra_solve(e, ec, fc, phi, opt.volterra_sweeps);
    row.agreement = vr.sweeps > 0 ? interior_distance(vr.solution, phi) : std::numeric_limits<double>::infinity();
    row.volterra_converged = vr.converged;
    if (!vr.failure.empty()) {
      row.volterra_note = vr.failure;
    } else {
      std::ostringstream os;
      os << vr.sweeps << " sweeps, last update " << vr.last_change << ", contraction " << vr.contraction;
      row.volterra_note = os.str();
    }
    rep.residuals_ok = rep.residuals_ok && row.residual <= opt.tol;
    rep.rows.push_back(std::move(row));

    kc.push_back(ec.k * std::pow(e.length, a));
    bc.push_back(w * ec.b * std::pow(e.length, a - 1.0));
    cc.push_back(w * ec.c * std::pow(e.length, a - 1.0));
    parts.emplace(e.id, std::move(phi));
  }
  rep.k_chain = relative_spread(kc);
  rep.b_chain = relative_spread(bc);
  rep.c_chain = relative_spread(cc);
  rep.solution = GraphFunction(std::move(parts));
  rep.conditions = check_conditions(star, rep.solution, opt.tol);
  rep.passed = rep.residuals_ok && (!opt.strict || rep.params.consistent);
  return rep;
}

}  // namespace fracgraph
