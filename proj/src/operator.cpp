#include "fracgraph/operator.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "fracgraph/errors.hpp"
#include "product_rule.hpp"

namespace fracgraph {

namespace {

double opposite_ends_integral(double len, double p, double q) {
  if (!(p > -1.0 && q > -1.0))
    throw DomainError("inner product of opposite-end terms is not integrable");
  return std::pow(len, p + q + 1.0) * std::exp(std::lgamma(p + 1.0) + std::lgamma(q + 1.0) - std::lgamma(p + q + 2.0));
}

}  // namespace

cplx inner_product(const GridFunction& f, const GridFunction& g) {
  if (f.grid_ptr() != g.grid_ptr() && !(f.grid() == g.grid()))
    throw DomainError("inner product of functions on different grids");
  const Grid& grid = f.grid();
  const auto fv = f.values();
  const auto gv = g.values();
  const double len = grid.length();

  cplx sum{};
  for (std::size_t k = 0; k < grid.intervals(); ++k) {
    const double h = grid[k + 1] - grid[k];
    sum += 0.5 * h * (fv[k] * std::conj(gv[k]) + fv[k + 1] * std::conj(gv[k + 1]));
  }
  for (Endpoint e : {Endpoint::at_zero, Endpoint::at_length}) {
    for (const auto& t : g.terms(e)) sum += std::conj(t.coefficient) * detail::weighted_integral(grid, fv, e, t.exponent);
    for (const auto& t : f.terms(e)) sum += t.coefficient * std::conj(detail::weighted_integral(grid, gv, e, t.exponent));
  }
  for (Endpoint ef : {Endpoint::at_zero, Endpoint::at_length}) {
    for (const auto& tf : f.terms(ef)) {
      for (Endpoint eg : {Endpoint::at_zero, Endpoint::at_length}) {
        for (const auto& tg : g.terms(eg)) {
          const double w = ef == eg ? detail::power_integral(len, tf.exponent + tg.exponent)
                                    : opposite_ends_integral(len, tf.exponent, tg.exponent);
          sum += tf.coefficient * std::conj(tg.coefficient) * w;
        }
      }
    }
  }
  return sum;
}

cplx inner_product(const GraphFunction& f, const GraphFunction& g) {
  if (f.components().size() != g.components().size()) throw DomainError("graph functions on different graphs");
  cplx sum{};
  for (const auto& [id, fc] : f.components()) sum += inner_product(fc, g.at(id));
  return sum;
}

const FracCalculus& GraphCalculus::on(const std::shared_ptr<const Grid>& grid) const {
  std::lock_guard lock(mu_);
  for (const auto& c : cache_)
    if (c->grid_ptr() == grid || *c->grid_ptr() == *grid) return *c;
  cache_.push_back(std::make_unique<FracCalculus>(grid, order_));
  return *cache_.back();
}

GraphFunction apply_operator(const GraphCalculus& calc, const MetricGraph& g, const GraphFunction& phi) {
  phi.require_on(g);
  std::map<std::string, GridFunction> out;
  for (const auto& [id, f] : phi.components()) out.emplace(id, calc.on(f.grid_ptr()).deriv_sum(f));
  return GraphFunction(std::move(out));
}

GraphFunction apply_operator(const MetricGraph& g, const GraphFunction& phi) {
  return apply_operator(GraphCalculus(g), g, phi);
}

SkewReport skew_form(const GraphCalculus& calc, const MetricGraph& g, const GraphFunction& phi,
                     const GraphFunction& psi, double trace_tol) {
  phi.require_on(g);
  psi.require_on(g);
  SkewReport r;
  r.omega = inner_product(apply_operator(calc, g, phi), psi) - inner_product(phi, apply_operator(calc, g, psi));
  r.grid_n = static_cast<int>(phi.components().begin()->second.grid().intervals());
  for (const auto& e : g.edges()) {
    const auto& f = phi.at(e.id);
    const auto& p = psi.at(e.id);
    for (Endpoint end : {Endpoint::at_zero, Endpoint::at_length}) {
      const auto lim = endpoint_trace(f, g.order(), end, trace_tol);
      if (!lim.converged) {
        throw TraceError("fractional-integral trace on edge " + e.id + " does not converge (spread " +
                         std::to_string(lim.error_estimate) + ")");
      }
      const cplx term = -std::conj(p.trace(end)) * lim.value;
      r.boundary_form += term;
      r.per_vertex_terms[end == Endpoint::at_zero ? e.start_vertex : e.end_vertex] += term;
    }
  }
  return r;
}

SkewReport skew_form(const MetricGraph& g, const GraphFunction& phi, const GraphFunction& psi, double trace_tol) {
  return skew_form(GraphCalculus(g), g, phi, psi, trace_tol);
}

const char* to_string(TrialFamily f) {
  switch (f) {
    case TrialFamily::vanishing:
      return "vanishing";
    case TrialFamily::vertex_conditions:
      return "conforming";
    case TrialFamily::violating:
      return "violating";
  }
  return "?";
}

namespace {

cplx random_complex(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double re = u(rng);
  const double im = u(rng);
  return {re, im};
}

// Shared grids per distinct edge length.
std::map<double, std::shared_ptr<const Grid>> grids_for(const MetricGraph& g, const GridSpec& spec) {
  std::map<double, std::shared_ptr<const Grid>> grids;
  for (const auto& e : g.edges())
    if (!grids.count(e.length)) grids[e.length] = Grid::graded(e.length, spec);
  return grids;
}

}  // namespace

GraphFunction random_vanishing_function(const MetricGraph& g, const GridSpec& spec, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const auto grids = grids_for(g, spec);
  std::map<std::string, GridFunction> parts;
  for (const auto& e : g.edges()) {
    std::array<cplx, 4> c{};
    for (auto& x : c) x = random_complex(rng);
    const double l = e.length;
    parts.emplace(e.id, GridFunction::sample(grids.at(e.length), [&](double x) {
      const double s = x / l;
      const double t = 1.0 - s;
      return c[0] * s * t + c[1] * s * s * t + c[2] * s * t * t + c[3] * s * s * t * t;
    }));
  }
  return GraphFunction(std::move(parts));
}

GraphFunction random_conforming_function(const MetricGraph& g, const GridSpec& spec, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const auto grids = grids_for(g, spec);
  std::map<std::pair<std::string, Endpoint>, cplx> end_value;
  for (const auto& c : g.conditions()) {
    if (c.kind == ConditionKind::dirichlet) {
      end_value[{c.incidences[0].edge, c.incidences[0].endpoint}] = 0.0;
      continue;
    }
    cplx s = random_complex(rng);
    if (std::abs(s) < 0.25) s = 0.25 * s / std::max(std::abs(s), 1e-3) + cplx{0.25, 0.0};
    for (const auto& inc : c.incidences) end_value[{inc.edge, inc.endpoint}] = s / inc.weight;
  }
  std::map<std::string, GridFunction> parts;
  for (const auto& e : g.edges()) {
    const cplx v0 = end_value.at({e.id, Endpoint::at_zero});
    const cplx vl = end_value.at({e.id, Endpoint::at_length});
    const cplx c1 = random_complex(rng);
    const cplx c2 = random_complex(rng);
    const double l = e.length;
    parts.emplace(e.id, GridFunction::sample(grids.at(e.length), [&](double x) {
      const double s = x / l;
      const double t = 1.0 - s;
      return v0 * t * t * (1.0 + 2.0 * s) + vl * s * s * (3.0 - 2.0 * s) + s * t * (c1 + c2 * s);
    }));
  }
  return GraphFunction(std::move(parts));
}

VerificationReport verify_self_adjoint(const MetricGraph& g, int trials, double tol, std::uint64_t seed,
                                       const GridSpec& spec) {
  if (trials < 1) throw DomainError("verify_self_adjoint: trials must be positive");
  if (!(tol > 0.0)) throw DomainError("verify_self_adjoint: tolerance must be positive");
  GraphCalculus calc(g);
  VerificationReport report;
  report.tol = tol;
  report.grid_n = spec.intervals;
  report.passed = true;

  auto trial_seed = [seed](int family, int trial, int member) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(family), static_cast<std::uint32_t>(trial),
                      static_cast<std::uint32_t>(member)};
    std::uint64_t out[1];
    std::uint32_t words[2];
    seq.generate(words, words + 2);
    out[0] = (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
    return out[0];
  };

  for (TrialFamily fam : {TrialFamily::vanishing, TrialFamily::vertex_conditions}) {
    const int fid = static_cast<int>(fam);
    for (int t = 0; t < trials; ++t) {
      auto make = [&](int member) {
        return fam == TrialFamily::vanishing ? random_vanishing_function(g, spec, trial_seed(fid, t, member))
                                             : random_conforming_function(g, spec, trial_seed(fid, t, member));
      };
      const auto phi = make(0);
      const auto psi = make(1);
      const auto s = skew_form(calc, g, phi, psi);
      TrialRow row{t, fam, std::abs(s.omega), std::abs(s.boundary_form), s.discrepancy(), false};
      row.passed = row.omega_abs <= tol;
      report.passed = report.passed && row.passed;
      report.rows.push_back(row);
    }
  }

  // Violating pair: a (dist)^{a-1}/Gamma(a) term on the first incidence of
  // the first Kirchhoff vertex gives that edge a unit fractional-integral
  // trace, which no conforming partner can balance.
  const VertexCondition* kv = nullptr;
  for (const auto& c : g.conditions())
    if (c.kind == ConditionKind::weighted_kirchhoff) {
      kv = &c;
      break;
    }
  if (!kv) throw DomainError("verify_self_adjoint: graph has no Kirchhoff vertex");
  const auto& inc = kv->incidences.front();
  const double a = g.order().value();
  auto base = random_conforming_function(g, spec, trial_seed(2, 0, 0));
  std::map<std::string, GridFunction> parts = base.components();
  const auto& f = parts.at(inc.edge);
  const std::vector<cplx> vals(f.values().begin(), f.values().end());
  const PowerTerm term{1.0 / gamma(a), a - 1.0};
  GridFunction bumped = inc.endpoint == Endpoint::at_zero ? GridFunction(f.grid_ptr(), vals, {term}, {})
                                                          : GridFunction(f.grid_ptr(), vals, {}, {term});
  parts.insert_or_assign(inc.edge, std::move(bumped));
  const GraphFunction phi(std::move(parts));
  const auto psi = random_conforming_function(g, spec, trial_seed(2, 0, 1));
  const auto s = skew_form(calc, g, phi, psi);
  report.violation = {0, TrialFamily::violating, std::abs(s.omega), std::abs(s.boundary_form), s.discrepancy(), false};
  report.violation.passed = report.violation.omega_abs > 10.0 * tol;
  report.violation_vertex = kv->vertex;
  report.passed = report.passed && report.violation.passed;
  return report;
}

}  // namespace fracgraph
