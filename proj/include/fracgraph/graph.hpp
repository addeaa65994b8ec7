#pragma once

// Metric graphs of the three supported families (star, binary tree of depth
// two, loop with a pendant edge at each side), their vertex conditions, and
// functions on them.
//
// Naming: edges use index strings ("1", "11", "121", ...).  A vertex is named
// after the edge that ends there; the vertex at x = 0 of the first edge is
// "0".  In weight maps a trailing prime ("11'") marks the weight an edge
// carries at its x = L end when the same edge also has a weight at x = 0.

#include <array>
#include <map>
#include <string>
#include <vector>

#include "fracgraph/fraccalc.hpp"

namespace fracgraph {

struct Edge {
  std::string id;
  double length;
  std::string start_vertex;  // x = 0
  std::string end_vertex;    // x = L
};

struct Incidence {
  std::string edge;
  Endpoint endpoint;
  double weight;
};

enum class ConditionKind { weighted_kirchhoff, dirichlet };

/// Weighted Kirchhoff: w_e T_e equal over all incidences and
/// sum_e (1/w_e) (I^{1-a} phi_e)(endpoint) = 0.  Dirichlet: T_e = 0.
struct VertexCondition {
  std::string vertex;
  ConditionKind kind;
  std::vector<Incidence> incidences;
};

enum class Topology { star, tree, loop };

const char* to_string(Topology t);
const char* to_string(ConditionKind k);

class MetricGraph {
 public:
  /// Validates: positive lengths, no self loops, every edge endpoint covered
  /// by exactly one incidence at the matching vertex, one condition per
  /// vertex, nonzero weights, Kirchhoff degree >= 2, Dirichlet degree 1.
  MetricGraph(Topology topology, std::vector<Edge> edges, std::vector<VertexCondition> conditions, FracOrder order);

  Topology topology() const noexcept { return topology_; }
  FracOrder order() const noexcept { return order_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const std::vector<std::string>& vertices() const noexcept { return vertices_; }
  const std::vector<VertexCondition>& conditions() const noexcept { return conditions_; }
  const Edge& edge(const std::string& id) const;
  const VertexCondition& condition(const std::string& vertex) const;

 private:
  Topology topology_;
  std::vector<Edge> edges_;
  std::vector<std::string> vertices_;
  std::vector<VertexCondition> conditions_;
  FracOrder order_;
};

/// N edges joined at vertex "0" (weights at x = 0), Dirichlet at every leaf.
MetricGraph build_star(FracOrder order, const std::vector<double>& lengths, const std::vector<double>& weights);

inline const std::vector<std::string> kTreeEdges{"1", "11", "12", "111", "112", "121", "122"};
inline const std::vector<std::string> kTreeWeightKeys{"1", "11", "12", "11'", "12'", "111", "112", "121", "122"};
inline const std::vector<std::string> kLoopWeightKeys{"1", "2", "3", "2'", "3'", "4"};

/// Root edge 1 (Dirichlet at its x = 0), junction "1" joining edge 1 at x = L
/// (weight "1") with edges 11, 12 at x = 0; junctions "11", "12" joining edge
/// 1i at x = L (weight "1i'") with edges 1i1, 1i2; Dirichlet at the leaves.
MetricGraph build_tree(FracOrder order, const std::map<std::string, double>& lengths,
                       const std::map<std::string, double>& weights);

/// Edge 1 (Dirichlet at x = 0) into junction "1" with edges 2 and 3 (both at
/// x = 0); edges 2, 3 (x = L, weights "2'", "3'") meet edge 4 (x = 0) at
/// junction "23"; Dirichlet at the far end of edge 4.
MetricGraph build_loop(FracOrder order, const std::array<double, 4>& lengths,
                       const std::map<std::string, double>& weights);

/// One GridFunction per edge, on a grid spanning that edge's length.
class GraphFunction {
 public:
  GraphFunction() = default;
  explicit GraphFunction(std::map<std::string, GridFunction> components);

  static GraphFunction sample(const MetricGraph& g, const GridSpec& spec,
                              const std::function<cplx(const Edge&, double)>& f);

  const GridFunction& at(const std::string& edge) const;
  const std::map<std::string, GridFunction>& components() const noexcept { return components_; }

  GraphFunction operator+(const GraphFunction& other) const;
  GraphFunction operator*(cplx scale) const;

  /// Throws DomainError unless there is exactly one component per edge and
  /// each spans its edge length.
  void require_on(const MetricGraph& g) const;

 private:
  std::map<std::string, GridFunction> components_;
};

struct VertexResidual {
  std::string vertex;
  ConditionKind kind;
  std::vector<cplx> traces;  // T_e per incidence, condition order
  std::vector<cplx> fluxes;  // (I^{1-a} phi_e)(endpoint) per incidence; Kirchhoff only
  double continuity = 0.0;
  double flux = 0.0;
  double dirichlet = 0.0;
  bool traces_converged = true;
  bool satisfied = false;
};

struct ConditionReport {
  std::vector<VertexResidual> vertices;
  bool satisfied = false;
};

ConditionReport check_conditions(const MetricGraph& g, const GraphFunction& phi, double tol);

}  // namespace fracgraph
