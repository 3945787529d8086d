#pragma once

#include <algorithm>
#include <bit>
#include <functional>
#include <memory>
#include <optional>
#include <queue>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "flowdec/error.hpp"

namespace flowdec {

struct Edge {
  Vertex tail;
  Vertex head;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Flow values indexed by edge id.
using Flow = std::vector<Weight>;

/// Acyclic multigraph with a unique source and a unique sink. Edge ids are
/// the positions in the insertion-ordered edge list and are never reassigned.
/// Instances only come out of `build`, so every MultiDag in circulation is
/// a valid s-t DAG.
class MultiDag {
 public:
  static MultiDag build(int vertex_count, std::vector<Edge> edges) {
    MultiDag g;
    g.n_ = vertex_count;
    g.edges_ = std::move(edges);
    g.finish();
    return g;
  }

  int vertex_count() const noexcept { return n_; }
  int edge_count() const noexcept { return static_cast<int>(edges_.size()); }
  Vertex source() const noexcept { return source_; }
  Vertex sink() const noexcept { return sink_; }

  const Edge& edge(EdgeId e) const { return edges_.at(static_cast<std::size_t>(e)); }
  std::span<const Edge> edges() const noexcept { return edges_; }

  /// Incident edge ids in increasing id order.
  std::span<const EdgeId> out_edges(Vertex v) const { return out_.at(static_cast<std::size_t>(v)); }
  std::span<const EdgeId> in_edges(Vertex v) const { return in_.at(static_cast<std::size_t>(v)); }
  int out_degree(Vertex v) const { return static_cast<int>(out_edges(v).size()); }
  int in_degree(Vertex v) const { return static_cast<int>(in_edges(v).size()); }

  /// Deterministic topological order, ties broken by smallest vertex id.
  std::span<const Vertex> topological_order() const noexcept { return topo_; }
  /// Position of each vertex in `topological_order()`.
  int rank(Vertex v) const { return rank_.at(static_cast<std::size_t>(v)); }

  bool is_internal(Vertex v) const noexcept { return v != source_ && v != sink_; }
  bool valid_vertex(Vertex v) const noexcept { return v >= 0 && v < n_; }

  friend bool operator==(const MultiDag& a, const MultiDag& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  MultiDag() = default;

  void finish() {
    if (n_ < 1 || edges_.empty()) throw Error(Errc::EmptyGraph, "graph needs at least one edge");
    const auto n = static_cast<std::size_t>(n_);
    out_.assign(n, {});
    in_.assign(n, {});
    for (EdgeId e = 0; e < edge_count(); ++e) {
      const Edge& ed = edges_[static_cast<std::size_t>(e)];
      if (!valid_vertex(ed.tail) || !valid_vertex(ed.head))
        throw Error(Errc::InvalidVertex, e, "edge endpoint out of range");
      if (ed.tail == ed.head) throw Error(Errc::CycleDetected, ed.tail, "self-loop");
      out_[static_cast<std::size_t>(ed.tail)].push_back(e);
      in_[static_cast<std::size_t>(ed.head)].push_back(e);
    }

    std::vector<Vertex> sources, sinks;
    for (Vertex v = 0; v < n_; ++v) {
      if (in_[static_cast<std::size_t>(v)].empty()) sources.push_back(v);
      if (out_[static_cast<std::size_t>(v)].empty()) sinks.push_back(v);
    }
    if (sources.size() > 1) throw Error(Errc::MultipleSources, sources[1], "more than one vertex with in-degree 0");
    if (sinks.size() > 1) throw Error(Errc::MultipleSinks, sinks[1], "more than one vertex with out-degree 0");
    if (sources.empty() || sinks.empty()) throw Error(Errc::CycleDetected, "no source or no sink");
    source_ = sources.front();
    sink_ = sinks.front();

    std::vector<int> pending(n);
    for (Vertex v = 0; v < n_; ++v) pending[static_cast<std::size_t>(v)] = in_degree(v);
    std::priority_queue<Vertex, std::vector<Vertex>, std::greater<>> ready;
    ready.push(source_);
    topo_.clear();
    while (!ready.empty()) {
      Vertex v = ready.top();
      ready.pop();
      topo_.push_back(v);
      for (EdgeId e : out_edges(v)) {
        Vertex w = edge(e).head;
        if (--pending[static_cast<std::size_t>(w)] == 0) ready.push(w);
      }
    }
    if (topo_.size() != n) {
      for (Vertex v = 0; v < n_; ++v)
        if (pending[static_cast<std::size_t>(v)] > 0) throw Error(Errc::CycleDetected, v, "vertex lies on a cycle");
    }
    rank_.assign(n, 0);
    for (std::size_t i = 0; i < topo_.size(); ++i) rank_[static_cast<std::size_t>(topo_[i])] = static_cast<int>(i);

    // With a unique source and sink in a DAG every vertex is already on an
    // s-t path; the check below only guards that reasoning.
    std::vector<char> from_s(n, 0), to_t(n, 0);
    from_s[static_cast<std::size_t>(source_)] = 1;
    for (Vertex v : topo_)
      if (from_s[static_cast<std::size_t>(v)])
        for (EdgeId e : out_edges(v)) from_s[static_cast<std::size_t>(edge(e).head)] = 1;
    to_t[static_cast<std::size_t>(sink_)] = 1;
    for (auto it = topo_.rbegin(); it != topo_.rend(); ++it)
      for (EdgeId e : out_edges(*it))
        if (to_t[static_cast<std::size_t>(edge(e).head)]) to_t[static_cast<std::size_t>(*it)] = 1;
    for (Vertex v = 0; v < n_; ++v)
      if (!from_s[static_cast<std::size_t>(v)] || !to_t[static_cast<std::size_t>(v)])
        throw Error(Errc::DanglingVertex, v, "vertex is not on any s-t path");
  }

  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<EdgeId>> out_;
  std::vector<std::vector<EdgeId>> in_;
  std::vector<Vertex> topo_;
  std::vector<int> rank_;
  Vertex source_ = 0;
  Vertex sink_ = 0;
};

using GraphPtr = std::shared_ptr<const MultiDag>;

inline GraphPtr share(MultiDag g) { return std::make_shared<const MultiDag>(std::move(g)); }

/// A graph paired with a conserving non-negative integer flow. The graph is
/// shared immutably so networks are cheap to copy.
class FlowNetwork {
 public:
  /// Skips validation; callers guarantee conservation and non-negativity.
  static FlowNetwork unchecked(GraphPtr graph, Flow flow) {
    FlowNetwork net;
    net.graph_ = std::move(graph);
    net.flow_ = std::move(flow);
    return net;
  }

  const MultiDag& graph() const noexcept { return *graph_; }
  const GraphPtr& graph_ptr() const noexcept { return graph_; }
  const Flow& flow() const noexcept { return flow_; }
  Weight flow(EdgeId e) const { return flow_.at(static_cast<std::size_t>(e)); }

  /// val(f): total flow leaving the source.
  Weight value() const {
    Weight total = 0;
    for (EdgeId e : graph_->out_edges(graph_->source())) total = checked_add(total, flow(e));
    return total;
  }

  /// ||f||: largest edge value.
  Weight max_weight() const {
    Weight best = 0;
    for (Weight w : flow_) best = std::max(best, w);
    return best;
  }

  /// floor(log2 ||f||) + 1, the number of parity-fixing rounds.
  int log_factor() const { return static_cast<int>(std::bit_width(static_cast<std::uint64_t>(max_weight()))); }

 private:
  FlowNetwork() = default;

  GraphPtr graph_;
  Flow flow_;
};

inline FlowNetwork validate(GraphPtr graph, Flow flow) {
  const MultiDag& g = *graph;
  if (flow.size() != static_cast<std::size_t>(g.edge_count()))
    throw Error(Errc::UnknownEdge, static_cast<std::int64_t>(std::min(flow.size(), static_cast<std::size_t>(g.edge_count()))),
                "flow has " + std::to_string(flow.size()) + " values for " + std::to_string(g.edge_count()) + " edges");
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    if (flow[static_cast<std::size_t>(e)] < 0) throw Error(Errc::NegativeFlow, e, "negative flow value");
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (!g.is_internal(v)) continue;
    Weight in = 0, out = 0;
    for (EdgeId e : g.in_edges(v)) in = checked_add(in, flow[static_cast<std::size_t>(e)]);
    for (EdgeId e : g.out_edges(v)) out = checked_add(out, flow[static_cast<std::size_t>(e)]);
    if (in != out) throw Error(Errc::ConservationViolated, v, std::to_string(in) + " in, " + std::to_string(out) + " out");
  }
  return FlowNetwork::unchecked(std::move(graph), std::move(flow));
}

inline FlowNetwork validate(MultiDag graph, Flow flow) { return validate(share(std::move(graph)), std::move(flow)); }

inline std::vector<Vertex> topological_order(const MultiDag& g) {
  auto order = g.topological_order();
  return {order.begin(), order.end()};
}

/// True iff a directed path leads from `from` to `to` without visiting
/// `avoiding`.
inline bool reachable(const MultiDag& g, Vertex from, Vertex to, std::optional<Vertex> avoiding = std::nullopt) {
  if (!g.valid_vertex(from)) throw Error(Errc::InvalidVertex, from, "unknown vertex");
  if (!g.valid_vertex(to)) throw Error(Errc::InvalidVertex, to, "unknown vertex");
  if (avoiding) {
    if (!g.valid_vertex(*avoiding)) throw Error(Errc::InvalidVertex, *avoiding, "unknown vertex");
    if (*avoiding == from || *avoiding == to) throw Error(Errc::InvalidVertex, *avoiding, "cannot avoid an endpoint");
  }
  if (from == to) return true;
  std::vector<char> seen(static_cast<std::size_t>(g.vertex_count()), 0);
  if (avoiding) seen[static_cast<std::size_t>(*avoiding)] = 1;
  std::vector<Vertex> stack{from};
  seen[static_cast<std::size_t>(from)] = 1;
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    for (EdgeId e : g.out_edges(v)) {
      Vertex w = g.edge(e).head;
      if (w == to) return true;
      if (!seen[static_cast<std::size_t>(w)]) {
        seen[static_cast<std::size_t>(w)] = 1;
        stack.push_back(w);
      }
    }
  }
  return false;
}

struct PathCounts {
  std::vector<Weight> from_source;  // d_s
  std::vector<Weight> to_sink;      // d_t
};

/// Number of s-v and v-t paths per vertex, saturated at `cap`.
inline PathCounts capped_path_counts(const MultiDag& g, Weight cap = 2) {
  if (cap < 1) throw Error(Errc::InvalidParameters, "cap must be positive");
  auto sat = [cap](Weight a, Weight b) { return (a >= cap - b) ? cap : a + b; };
  const auto n = static_cast<std::size_t>(g.vertex_count());
  PathCounts pc{std::vector<Weight>(n, 0), std::vector<Weight>(n, 0)};
  pc.from_source[static_cast<std::size_t>(g.source())] = 1;
  for (Vertex v : g.topological_order())
    for (EdgeId e : g.out_edges(v)) {
      auto& h = pc.from_source[static_cast<std::size_t>(g.edge(e).head)];
      h = sat(h, pc.from_source[static_cast<std::size_t>(v)]);
    }
  pc.to_sink[static_cast<std::size_t>(g.sink())] = 1;
  auto order = g.topological_order();
  for (auto it = order.rbegin(); it != order.rend(); ++it)
    for (EdgeId e : g.out_edges(*it)) {
      auto& t = pc.to_sink[static_cast<std::size_t>(*it)];
      t = sat(t, pc.to_sink[static_cast<std::size_t>(g.edge(e).head)]);
    }
  return pc;
}

/// A network derived from a parent, with the id maps back to the parent.
struct Subnetwork {
  FlowNetwork network;
  std::vector<EdgeId> parent_edge;
  std::vector<Vertex> parent_vertex;
};

/// G|_f: the positive-flow edges and the vertices they touch. Vertex and edge
/// ids are compacted in parent order.
inline Subnetwork flow_subgraph(const FlowNetwork& net) {
  const MultiDag& g = net.graph();
  if (net.value() == 0) throw Error(Errc::EmptyFlow, "flow value is zero");
  std::vector<Vertex> new_id(static_cast<std::size_t>(g.vertex_count()), -1);
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (net.flow(e) == 0) continue;
    new_id[static_cast<std::size_t>(g.edge(e).tail)] = 0;
    new_id[static_cast<std::size_t>(g.edge(e).head)] = 0;
  }
  Subnetwork sub{FlowNetwork::unchecked(nullptr, {}), {}, {}};
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    if (new_id[static_cast<std::size_t>(v)] == 0) {
      new_id[static_cast<std::size_t>(v)] = static_cast<Vertex>(sub.parent_vertex.size());
      sub.parent_vertex.push_back(v);
    }
  std::vector<Edge> edges;
  Flow flow;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (net.flow(e) == 0) continue;
    edges.push_back({new_id[static_cast<std::size_t>(g.edge(e).tail)], new_id[static_cast<std::size_t>(g.edge(e).head)]});
    flow.push_back(net.flow(e));
    sub.parent_edge.push_back(e);
  }
  sub.network = FlowNetwork::unchecked(share(MultiDag::build(static_cast<int>(sub.parent_vertex.size()), std::move(edges))),
                                       std::move(flow));
  return sub;
}

/// Result of Y-to-V contraction: `chains[e]` lists the original edge ids that
/// the contracted edge e stands for, in s-to-t order.
struct Contraction {
  FlowNetwork network;
  std::vector<std::vector<EdgeId>> chains;
};

/// Contracts edges (a,b) with in-degree(b) = 1 or out-degree(a) = 1 until
/// none remain, lowest surviving edge first. Edges with zero flow are kept,
/// so callers usually contract a flow subgraph.
inline Contraction yv_contract(const FlowNetwork& net) {
  const MultiDag& g = net.graph();
  struct Work {
    Vertex tail, head;
    Weight weight;
    std::vector<EdgeId> chain;
    bool alive;
  };
  std::vector<Work> work;
  work.reserve(static_cast<std::size_t>(g.edge_count()));
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    work.push_back({g.edge(e).tail, g.edge(e).head, net.flow(e), {e}, true});
  const Vertex s = g.source(), t = g.sink();
  const auto n = static_cast<std::size_t>(g.vertex_count());

  for (;;) {
    std::vector<int> indeg(n, 0), outdeg(n, 0);
    for (const Work& w : work)
      if (w.alive) {
        ++outdeg[static_cast<std::size_t>(w.tail)];
        ++indeg[static_cast<std::size_t>(w.head)];
      }
    bool changed = false;
    for (std::size_t i = 0; i < work.size() && !changed; ++i) {
      if (!work[i].alive) continue;
      const Vertex a = work[i].tail, b = work[i].head;
      if (indeg[static_cast<std::size_t>(b)] == 1 && b != t) {
        // b merges into a: its out-edges now start at a.
        for (Work& w : work)
          if (w.alive && w.tail == b) {
            w.tail = a;
            std::vector<EdgeId> chain = work[i].chain;
            chain.insert(chain.end(), w.chain.begin(), w.chain.end());
            w.chain = std::move(chain);
          }
        work[i].alive = false;
        changed = true;
      } else if (outdeg[static_cast<std::size_t>(a)] == 1 && a != s) {
        // a merges into b: its in-edges now end at b.
        for (Work& w : work)
          if (w.alive && w.head == a) {
            w.head = b;
            w.chain.insert(w.chain.end(), work[i].chain.begin(), work[i].chain.end());
          }
        work[i].alive = false;
        changed = true;
      }
    }
    if (!changed) break;
  }

  std::vector<Vertex> new_id(n, -1);
  for (const Work& w : work)
    if (w.alive) {
      new_id[static_cast<std::size_t>(w.tail)] = 0;
      new_id[static_cast<std::size_t>(w.head)] = 0;
    }
  Vertex next = 0;
  for (auto& id : new_id)
    if (id == 0) id = next++;
  std::vector<Edge> edges;
  Flow flow;
  Contraction out{FlowNetwork::unchecked(nullptr, {}), {}};
  for (Work& w : work) {
    if (!w.alive) continue;
    edges.push_back({new_id[static_cast<std::size_t>(w.tail)], new_id[static_cast<std::size_t>(w.head)]});
    flow.push_back(w.weight);
    out.chains.push_back(std::move(w.chain));
  }
  out.network = FlowNetwork::unchecked(share(MultiDag::build(next, std::move(edges))), std::move(flow));
  return out;
}

/// Replaces every contracted edge id on `path` by its chain.
inline std::vector<EdgeId> expand_path(const std::vector<std::vector<EdgeId>>& chains, std::span<const EdgeId> path) {
  std::vector<EdgeId> out;
  for (EdgeId e : path) {
    const auto& c = chains.at(static_cast<std::size_t>(e));
    out.insert(out.end(), c.begin(), c.end());
  }
  return out;
}

inline std::vector<EdgeId> map_edges(std::span<const EdgeId> parent_edge, std::span<const EdgeId> path) {
  std::vector<EdgeId> out;
  out.reserve(path.size());
  for (EdgeId e : path) out.push_back(parent_edge[static_cast<std::size_t>(e)]);
  return out;
}

}  // namespace flowdec
