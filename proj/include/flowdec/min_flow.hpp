#pragma once

#include <optional>
#include <vector>

#include "flowdec/graph.hpp"
#include "flowdec/max_flow.hpp"

namespace flowdec {

/// Per-edge integer bounds for a minimum-value flow. An empty `upper` entry
/// means unbounded.
struct BoundedFlowProblem {
  GraphPtr graph;
  std::vector<Weight> lower;
  std::vector<std::optional<Weight>> upper;
  std::optional<Flow> witness;
};

namespace detail {

inline Weight cap_of(const std::optional<Weight>& upper) { return upper ? *upper : kUnbounded; }

inline void check_problem(const BoundedFlowProblem& p) {
  const MultiDag& g = *p.graph;
  const auto m = static_cast<std::size_t>(g.edge_count());
  if (p.lower.size() != m || p.upper.size() != m)
    throw Error(Errc::InvalidParameters, "bound vectors do not match the edge count");
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const auto i = static_cast<std::size_t>(e);
    if (p.lower[i] < 0) throw Error(Errc::InvalidParameters, e, "negative lower bound");
    if (p.upper[i] && *p.upper[i] < p.lower[i]) throw Error(Errc::Infeasible, e, "lower bound exceeds upper bound");
  }
  if (!p.witness) return;
  const Flow& w = *p.witness;
  if (w.size() != m) throw Error(Errc::InvalidParameters, "witness does not match the edge count");
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const auto i = static_cast<std::size_t>(e);
    if (w[i] < p.lower[i] || w[i] > cap_of(p.upper[i]))
      throw Error(Errc::InvalidParameters, e, "witness violates the bounds");
  }
  validate(p.graph, w);
}

// Circulation with lower bounds: route the forced lower-bound excess from a
// super source to a super sink with a t->s return arc.
inline Flow feasible_flow(const BoundedFlowProblem& p) {
  const MultiDag& g = *p.graph;
  const int n = g.vertex_count();
  const int super_s = n, super_t = n + 1;
  MaxFlow mf(n + 2);
  std::vector<int> arc(static_cast<std::size_t>(g.edge_count()));
  std::vector<Weight> excess(static_cast<std::size_t>(n), 0);
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const auto i = static_cast<std::size_t>(e);
    const Edge& ed = g.edge(e);
    Weight room = p.upper[i] ? *p.upper[i] - p.lower[i] : kUnbounded;
    arc[i] = mf.add_arc(ed.tail, ed.head, room);
    excess[static_cast<std::size_t>(ed.head)] = checked_add(excess[static_cast<std::size_t>(ed.head)], p.lower[i]);
    excess[static_cast<std::size_t>(ed.tail)] = checked_sub(excess[static_cast<std::size_t>(ed.tail)], p.lower[i]);
  }
  mf.add_arc(g.sink(), g.source(), kUnbounded);
  Weight demand = 0;
  for (Vertex v = 0; v < n; ++v) {
    Weight x = excess[static_cast<std::size_t>(v)];
    if (x > 0) {
      mf.add_arc(super_s, v, x);
      demand = checked_add(demand, x);
    } else if (x < 0) {
      mf.add_arc(v, super_t, -x);
    }
  }
  if (mf.run(super_s, super_t) != demand) throw Error(Errc::Infeasible, "no flow satisfies the bounds");
  Flow g_flow(static_cast<std::size_t>(g.edge_count()));
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const auto i = static_cast<std::size_t>(e);
    g_flow[i] = checked_add(p.lower[i], mf.flow_on(arc[i]));
  }
  return g_flow;
}

}  // namespace detail

/// Minimum-value integral flow within the bounds. Starts from the witness
/// (or a bootstrapped feasible flow) and pushes a maximum flow from t back to
/// s through the decrease/increase residual arcs.
inline Flow solve_min_flow(const BoundedFlowProblem& problem) {
  detail::check_problem(problem);
  const MultiDag& g = *problem.graph;
  Flow flow = problem.witness ? *problem.witness : detail::feasible_flow(problem);

  detail::MaxFlow mf(g.vertex_count());
  std::vector<int> decrease(static_cast<std::size_t>(g.edge_count()));
  std::vector<int> increase(static_cast<std::size_t>(g.edge_count()));
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const auto i = static_cast<std::size_t>(e);
    const Edge& ed = g.edge(e);
    decrease[i] = mf.add_arc(ed.head, ed.tail, flow[i] - problem.lower[i]);
    Weight room = problem.upper[i] ? *problem.upper[i] - flow[i] : detail::kUnbounded;
    increase[i] = mf.add_arc(ed.tail, ed.head, room);
  }
  mf.run(g.sink(), g.source());
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const auto i = static_cast<std::size_t>(e);
    flow[i] = flow[i] - mf.flow_on(decrease[i]) + mf.flow_on(increase[i]);
  }
  return flow;
}

/// Value plus a flow attaining it.
struct WidthResult {
  Weight value;
  Flow witness;
};

/// Minimum number of s-t paths covering every edge.
inline WidthResult width(const GraphPtr& graph) {
  const auto m = static_cast<std::size_t>(graph->edge_count());
  BoundedFlowProblem p{graph, std::vector<Weight>(m, 1), std::vector<std::optional<Weight>>(m), std::nullopt};
  Flow g = solve_min_flow(p);
  auto net = FlowNetwork::unchecked(graph, g);
  return {net.value(), std::move(g)};
}

inline WidthResult width(const MultiDag& graph) { return width(share(graph)); }

/// Flow-width: fewest s-t paths covering every positive edge while using each
/// edge e at most f(e) times. Solved on G|_f; the witness is a minimal flow
/// expressed on the parent edge ids.
inline WidthResult flow_width(const FlowNetwork& net) {
  Subnetwork sub = flow_subgraph(net);
  const auto m = static_cast<std::size_t>(sub.network.graph().edge_count());
  BoundedFlowProblem p{sub.network.graph_ptr(), std::vector<Weight>(m, 1), {}, sub.network.flow()};
  p.upper.reserve(m);
  for (Weight w : sub.network.flow()) p.upper.emplace_back(w);
  Flow g = solve_min_flow(p);
  Flow parent(static_cast<std::size_t>(net.graph().edge_count()), 0);
  Weight value = 0;
  for (std::size_t i = 0; i < m; ++i) parent[static_cast<std::size_t>(sub.parent_edge[i])] = g[i];
  for (EdgeId e : net.graph().out_edges(net.graph().source())) value = checked_add(value, parent[static_cast<std::size_t>(e)]);
  return {value, std::move(parent)};
}

namespace detail {

// Among minimum solutions of the parity problem, some leave f - g odd on a
// set of edges forming undirected cycles (for instance two parallel odd
// edges sharing a split of an even total). Pushing one unit around each such
// cycle keeps every bound and the value, and flips exactly those parities.
// An odd-degree vertex would mean a decrementing path exists, i.e. g was not
// minimum.
inline void normalize_parity(const MultiDag& g, const Flow& f, Flow& h) {
  const auto m = static_cast<std::size_t>(g.edge_count());
  std::vector<char> odd(m, 0);
  std::vector<int> degree(static_cast<std::size_t>(g.vertex_count()), 0);
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const auto i = static_cast<std::size_t>(e);
    if ((f[i] - h[i]) % 2 != 0) {
      odd[i] = 1;
      ++degree[static_cast<std::size_t>(g.edge(e).tail)];
      ++degree[static_cast<std::size_t>(g.edge(e).head)];
    }
  }
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    if (degree[static_cast<std::size_t>(v)] % 2 != 0)
      throw Error(Errc::ParityAssertionFailed, v, "odd residual edges do not form cycles");

  auto next_incident = [&](Vertex v) -> EdgeId {
    EdgeId best = -1;
    for (EdgeId e : g.out_edges(v))
      if (odd[static_cast<std::size_t>(e)]) { best = e; break; }
    for (EdgeId e : g.in_edges(v))
      if (odd[static_cast<std::size_t>(e)]) {
        if (best < 0 || e < best) best = e;
        break;
      }
    return best;
  };

  for (EdgeId first = 0; first < g.edge_count(); ++first) {
    if (!odd[static_cast<std::size_t>(first)]) continue;
    const Vertex start = g.edge(first).tail;
    Vertex at = start;
    EdgeId e = first;
    do {
      const auto i = static_cast<std::size_t>(e);
      odd[i] = 0;
      // A parity-violating edge has room for one unit in either direction.
      if (g.edge(e).tail == at) {
        h[i] += 1;
        at = g.edge(e).head;
      } else {
        h[i] -= 1;
        at = g.edge(e).tail;
      }
      if (at == start) break;
      e = next_incident(at);
      if (e < 0) throw Error(Errc::ParityAssertionFailed, at, "parity cycle walk got stuck");
    } while (true);
  }
}

}  // namespace detail

/// Minimum-value flow g with 0 <= g <= f and g >= 1 on every odd edge of f,
/// chosen so that f - g is even everywhere.
inline Flow parity_cover_flow(const FlowNetwork& net) {
  if (net.value() == 0) throw Error(Errc::EmptyFlow, "flow value is zero");
  const MultiDag& g = net.graph();
  const auto m = static_cast<std::size_t>(g.edge_count());
  BoundedFlowProblem p{net.graph_ptr(), std::vector<Weight>(m, 0), {}, net.flow()};
  p.upper.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    p.lower[i] = net.flow()[i] % 2;
    p.upper.emplace_back(net.flow()[i]);
  }
  Flow h = solve_min_flow(p);
  detail::normalize_parity(g, net.flow(), h);
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const auto i = static_cast<std::size_t>(e);
    if ((net.flow()[i] - h[i]) % 2 != 0 || h[i] < p.lower[i] || h[i] > net.flow()[i])
      throw Error(Errc::ParityAssertionFailed, e, "f - g is not even");
  }
  return h;
}

/// Splits h into val(h) unit s-t paths. At every vertex the walk takes the
/// smallest-id out-edge that still has flow left.
inline std::vector<std::vector<EdgeId>> extract_unit_paths(const FlowNetwork& net) {
  const MultiDag& g = net.graph();
  Flow left = net.flow();
  std::vector<std::vector<EdgeId>> paths;
  const Weight count = net.value();
  paths.reserve(static_cast<std::size_t>(count));
  for (Weight k = 0; k < count; ++k) {
    std::vector<EdgeId> path;
    for (Vertex v = g.source(); v != g.sink();) {
      EdgeId chosen = -1;
      for (EdgeId e : g.out_edges(v))
        if (left[static_cast<std::size_t>(e)] > 0) {
          chosen = e;
          break;
        }
      if (chosen < 0) throw Error(Errc::ConservationViolated, v, "unit path extraction got stuck");
      --left[static_cast<std::size_t>(chosen)];
      path.push_back(chosen);
      v = g.edge(chosen).head;
    }
    paths.push_back(std::move(path));
  }
  return paths;
}

}  // namespace flowdec
