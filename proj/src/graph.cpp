#include "fracgraph/graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include "fracgraph/errors.hpp"

namespace fracgraph {

const char* to_string(Topology t) {
  switch (t) {
    case Topology::star:
      return "star";
    case Topology::tree:
      return "tree";
    case Topology::loop:
      return "loop";
  }
  return "?";
}

const char* to_string(ConditionKind k) {
  return k == ConditionKind::weighted_kirchhoff ? "kirchhoff" : "dirichlet";
}

namespace {

[[noreturn]] void fail(const std::string& msg) { throw DomainError(msg); }

void check_length(const std::string& id, double l) {
  if (!(l > 0.0) || !std::isfinite(l)) fail("edge " + id + ": length must be positive");
}

void check_weight(const std::string& key, double w) {
  if (w == 0.0 || !std::isfinite(w)) fail("weight " + key + " must be a nonzero real number");
}

double lookup(const std::map<std::string, double>& m, const std::string& key, const char* what) {
  auto it = m.find(key);
  if (it == m.end()) fail(std::string("missing ") + what + " '" + key + "'");
  return it->second;
}

VertexCondition dirichlet(const std::string& vertex, const std::string& edge, Endpoint end) {
  return {vertex, ConditionKind::dirichlet, {{edge, end, 1.0}}};
}

}  // namespace

MetricGraph::MetricGraph(Topology topology, std::vector<Edge> edges, std::vector<VertexCondition> conditions,
                         FracOrder order)
    : topology_(topology), edges_(std::move(edges)), conditions_(std::move(conditions)), order_(order) {
  std::set<std::string> edge_ids;
  std::set<std::string> vertex_set;
  for (const auto& e : edges_) {
    if (!edge_ids.insert(e.id).second) fail("duplicate edge id " + e.id);
    check_length(e.id, e.length);
    if (e.start_vertex == e.end_vertex) fail("edge " + e.id + " is a self loop");
    for (const auto* v : {&e.start_vertex, &e.end_vertex}) {
      if (vertex_set.insert(*v).second) vertices_.push_back(*v);
    }
  }
  std::set<std::string> with_condition;
  std::set<std::pair<std::string, Endpoint>> covered;
  for (const auto& c : conditions_) {
    if (!vertex_set.count(c.vertex)) fail("condition at unknown vertex " + c.vertex);
    if (!with_condition.insert(c.vertex).second) fail("vertex " + c.vertex + " has more than one condition");
    if (c.kind == ConditionKind::weighted_kirchhoff && c.incidences.size() < 2)
      fail("Kirchhoff vertex " + c.vertex + " needs at least two incidences");
    if (c.kind == ConditionKind::dirichlet && c.incidences.size() != 1)
      fail("Dirichlet vertex " + c.vertex + " needs exactly one incidence");
    for (const auto& inc : c.incidences) {
      const Edge& e = edge(inc.edge);
      const auto& v = inc.endpoint == Endpoint::at_zero ? e.start_vertex : e.end_vertex;
      if (v != c.vertex) fail("incidence of edge " + e.id + " does not touch vertex " + c.vertex);
      check_weight(e.id, inc.weight);
      if (!covered.insert({inc.edge, inc.endpoint}).second) fail("edge endpoint of " + e.id + " covered twice");
    }
  }
  if (covered.size() != 2 * edges_.size()) fail("some edge endpoint has no vertex condition");
  if (with_condition.size() != vertices_.size()) fail("some vertex has no condition");
}

const Edge& MetricGraph::edge(const std::string& id) const {
  for (const auto& e : edges_)
    if (e.id == id) return e;
  fail("unknown edge " + id);
}

const VertexCondition& MetricGraph::condition(const std::string& vertex) const {
  for (const auto& c : conditions_)
    if (c.vertex == vertex) return c;
  fail("unknown vertex " + vertex);
}

MetricGraph build_star(FracOrder order, const std::vector<double>& lengths, const std::vector<double>& weights) {
  const std::size_t n = lengths.size();
  if (n < 2) fail("star graph needs at least two edges");
  if (weights.size() != n) fail("star graph: lengths and weights differ in count");
  std::vector<Edge> edges;
  std::vector<VertexCondition> conds;
  VertexCondition center{"0", ConditionKind::weighted_kirchhoff, {}};
  for (std::size_t j = 0; j < n; ++j) {
    const std::string id = std::to_string(j + 1);
    check_length(id, lengths[j]);
    check_weight(id, weights[j]);
    edges.push_back({id, lengths[j], "0", id});
    center.incidences.push_back({id, Endpoint::at_zero, weights[j]});
    conds.push_back(dirichlet(id, id, Endpoint::at_length));
  }
  conds.insert(conds.begin(), std::move(center));
  return MetricGraph(Topology::star, std::move(edges), std::move(conds), order);
}

MetricGraph build_tree(FracOrder order, const std::map<std::string, double>& lengths,
                       const std::map<std::string, double>& weights) {
  std::vector<Edge> edges;
  for (const auto& id : kTreeEdges) {
    const double l = lookup(lengths, id, "tree length");
    check_length(id, l);
    const std::string start = id == "1" ? "0" : id.substr(0, id.size() - 1);
    edges.push_back({id, l, start, id});
  }
  for (const auto& key : kTreeWeightKeys) check_weight(key, lookup(weights, key, "tree weight"));
  auto w = [&](const std::string& k) { return weights.at(k); };

  std::vector<VertexCondition> conds;
  conds.push_back(dirichlet("0", "1", Endpoint::at_zero));
  conds.push_back({"1",
                   ConditionKind::weighted_kirchhoff,
                   {{"1", Endpoint::at_length, w("1")}, {"11", Endpoint::at_zero, w("11")},
                    {"12", Endpoint::at_zero, w("12")}}});
  for (const std::string i : {"1", "2"}) {
    const std::string mid = "1" + i;
    conds.push_back({mid,
                     ConditionKind::weighted_kirchhoff,
                     {{mid, Endpoint::at_length, w(mid + "'")}, {mid + "1", Endpoint::at_zero, w(mid + "1")},
                      {mid + "2", Endpoint::at_zero, w(mid + "2")}}});
  }
  for (const std::string leaf : {"111", "112", "121", "122"}) conds.push_back(dirichlet(leaf, leaf, Endpoint::at_length));
  return MetricGraph(Topology::tree, std::move(edges), std::move(conds), order);
}

MetricGraph build_loop(FracOrder order, const std::array<double, 4>& lengths,
                       const std::map<std::string, double>& weights) {
  for (std::size_t j = 0; j < 4; ++j) check_length(std::to_string(j + 1), lengths[j]);
  for (const auto& key : kLoopWeightKeys) check_weight(key, lookup(weights, key, "loop weight"));
  auto w = [&](const std::string& k) { return weights.at(k); };
  std::vector<Edge> edges{{"1", lengths[0], "0", "1"},
                          {"2", lengths[1], "1", "23"},
                          {"3", lengths[2], "1", "23"},
                          {"4", lengths[3], "23", "4"}};
  std::vector<VertexCondition> conds;
  conds.push_back(dirichlet("0", "1", Endpoint::at_zero));
  conds.push_back({"1",
                   ConditionKind::weighted_kirchhoff,
                   {{"1", Endpoint::at_length, w("1")}, {"2", Endpoint::at_zero, w("2")},
                    {"3", Endpoint::at_zero, w("3")}}});
  conds.push_back({"23",
                   ConditionKind::weighted_kirchhoff,
                   {{"2", Endpoint::at_length, w("2'")}, {"3", Endpoint::at_length, w("3'")},
                    {"4", Endpoint::at_zero, w("4")}}});
  conds.push_back(dirichlet("4", "4", Endpoint::at_length));
  return MetricGraph(Topology::loop, std::move(edges), std::move(conds), order);
}

// ---------------------------------------------------------------------------

GraphFunction::GraphFunction(std::map<std::string, GridFunction> components) : components_(std::move(components)) {}

GraphFunction GraphFunction::sample(const MetricGraph& g, const GridSpec& spec,
                                    const std::function<cplx(const Edge&, double)>& f) {
  std::map<std::string, GridFunction> parts;
  std::map<double, std::shared_ptr<const Grid>> grids;
  for (const auto& e : g.edges()) {
    auto& grid = grids[e.length];
    if (!grid) grid = Grid::graded(e.length, spec);
    parts.emplace(e.id, GridFunction::sample(grid, [&](double x) { return f(e, x); }));
  }
  return GraphFunction(std::move(parts));
}

const GridFunction& GraphFunction::at(const std::string& edge) const {
  auto it = components_.find(edge);
  if (it == components_.end()) throw DomainError("graph function has no component on edge " + edge);
  return it->second;
}

GraphFunction GraphFunction::operator+(const GraphFunction& other) const {
  if (components_.size() != other.components_.size()) throw DomainError("graph functions on different graphs");
  std::map<std::string, GridFunction> out;
  for (const auto& [id, f] : components_) out.emplace(id, f + other.at(id));
  return GraphFunction(std::move(out));
}

GraphFunction GraphFunction::operator*(cplx scale) const {
  std::map<std::string, GridFunction> out;
  for (const auto& [id, f] : components_) out.emplace(id, f * scale);
  return GraphFunction(std::move(out));
}

void GraphFunction::require_on(const MetricGraph& g) const {
  if (components_.size() != g.edges().size()) throw DomainError("graph function does not match graph edges");
  for (const auto& e : g.edges()) {
    const auto& f = at(e.id);
    if (std::abs(f.grid().length() - e.length) > 1e-12 * e.length)
      throw DomainError("component on edge " + e.id + " does not span the edge length");
  }
}

ConditionReport check_conditions(const MetricGraph& g, const GraphFunction& phi, double tol) {
  phi.require_on(g);
  ConditionReport report;
  report.satisfied = true;
  for (const auto& c : g.conditions()) {
    VertexResidual r;
    r.vertex = c.vertex;
    r.kind = c.kind;
    for (const auto& inc : c.incidences) r.traces.push_back(phi.at(inc.edge).trace(inc.endpoint));
    if (c.kind == ConditionKind::dirichlet) {
      r.dirichlet = std::abs(r.traces.front());
    } else {
      for (std::size_t a = 0; a < r.traces.size(); ++a)
        for (std::size_t b = a + 1; b < r.traces.size(); ++b)
          r.continuity = std::max(r.continuity, std::abs(c.incidences[a].weight * r.traces[a] -
                                                         c.incidences[b].weight * r.traces[b]));
      cplx sum{};
      for (const auto& inc : c.incidences) {
        const auto lim = endpoint_trace(phi.at(inc.edge), g.order(), inc.endpoint, tol);
        r.fluxes.push_back(lim.value);
        r.traces_converged = r.traces_converged && lim.converged;
        sum += lim.value / inc.weight;
      }
      r.flux = r.traces_converged ? std::abs(sum) : std::numeric_limits<double>::infinity();
    }
    r.satisfied = r.traces_converged && r.continuity <= tol && r.flux <= tol && r.dirichlet <= tol;
    report.satisfied = report.satisfied && r.satisfied;
    report.vertices.push_back(std::move(r));
  }
  return report;
}

}  // namespace fracgraph
