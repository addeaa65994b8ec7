#pragma once

// The edge-wise operator D_{0+}^a + D_{l-}^a on a metric graph, the L2(G)
// inner product, and the skew form Omega(phi, psi) = <A phi, psi> - <phi, A psi>.

#include <cstdint>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "fracgraph/graph.hpp"

namespace fracgraph {

/// int_0^L f conj(g) dx on one edge.  Remainder products use the trapezoidal
/// rule; products with endpoint power terms are integrated exactly against
/// the linear interpolant, and term-by-term products in closed form.  A
/// product of same-end terms whose exponents sum to <= -1 is not integrable;
/// its Hadamard finite part is used, which is additive over subintervals, so
/// divergent parts cancel exactly inside Omega.
cplx inner_product(const GridFunction& f, const GridFunction& g);
cplx inner_product(const GraphFunction& f, const GraphFunction& g);

/// Derivative operators for every distinct edge grid of a graph, built lazily.
class GraphCalculus {
 public:
  explicit GraphCalculus(const MetricGraph& g) : order_(g.order()) {}
  const FracCalculus& on(const std::shared_ptr<const Grid>& grid) const;
  FracOrder order() const noexcept { return order_; }

 private:
  FracOrder order_;
  mutable std::mutex mu_;
  mutable std::vector<std::unique_ptr<FracCalculus>> cache_;
};

GraphFunction apply_operator(const GraphCalculus& calc, const MetricGraph& g, const GraphFunction& phi);
GraphFunction apply_operator(const MetricGraph& g, const GraphFunction& phi);

struct SkewReport {
  cplx omega;
  cplx boundary_form;
  std::map<std::string, cplx> per_vertex_terms;
  int grid_n = 0;
  double discrepancy() const { return std::abs(omega - boundary_form); }
};

/// omega from the discrete inner products; boundary_form =
/// -sum_j [conj(psi_j(0)) (I_{0+}^{1-a} phi_j)(+0) + conj(psi_j(l_j)) (I_{l_j-}^{1-a} phi_j)(l_j-0)]
/// with endpoint values of psi taken in trace semantics.  Throws TraceError if
/// an endpoint limit does not settle to trace_tol.
SkewReport skew_form(const GraphCalculus& calc, const MetricGraph& g, const GraphFunction& phi,
                     const GraphFunction& psi, double trace_tol = 1e-4);
SkewReport skew_form(const MetricGraph& g, const GraphFunction& phi, const GraphFunction& psi,
                     double trace_tol = 1e-4);

enum class TrialFamily { vanishing, vertex_conditions, violating };
const char* to_string(TrialFamily f);

/// Random smooth components x^p (l-x)^q, p, q in {1, 2}: vanish at every endpoint.
GraphFunction random_vanishing_function(const MetricGraph& g, const GridSpec& spec, std::uint64_t seed);
/// Random smooth components that meet every vertex condition of g: shared
/// vertex value s_v scaled by 1/w_e at Kirchhoff vertices, zero at Dirichlet
/// vertices.  Bounded components have vanishing fractional-integral traces,
/// so the flux condition holds as well.
GraphFunction random_conforming_function(const MetricGraph& g, const GridSpec& spec, std::uint64_t seed);

struct TrialRow {
  int trial = 0;
  TrialFamily family = TrialFamily::vanishing;
  double omega_abs = 0.0;
  double boundary_abs = 0.0;
  double discrepancy = 0.0;
  bool passed = false;
};

struct VerificationReport {
  std::vector<TrialRow> rows;  // sorted by (family, trial)
  TrialRow violation;
  std::string violation_vertex;
  int grid_n = 0;
  double tol = 0.0;
  bool passed = false;
};

/// `trials` random pairs in each of the two conforming families must give
/// |Omega| <= tol; one pair whose first member carries a (dist)^{a-1} term on
/// one Kirchhoff incidence must give |Omega| > 10 tol.
VerificationReport verify_self_adjoint(const MetricGraph& g, int trials, double tol, std::uint64_t seed,
                                       const GridSpec& spec = {});

}  // namespace fracgraph
