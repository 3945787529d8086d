#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "flowdec/min_flow.hpp"

namespace flowdec {

// ---------------------------------------------------------------------------
// Reference graphs

/// CH_k: vertices s=0, u=1, v=2, t=3 with k parallel (s,u), then (s,v),
/// (u,v), (u,t), then k parallel (v,t).
inline MultiDag make_chk(int k) {
  if (k < 1) throw Error(Errc::InvalidParameters, "k must be positive");
  std::vector<Edge> edges;
  for (int i = 0; i < k; ++i) edges.push_back({0, 1});
  edges.push_back({0, 2});
  edges.push_back({1, 2});
  edges.push_back({1, 3});
  for (int i = 0; i < k; ++i) edges.push_back({2, 3});
  return MultiDag::build(4, std::move(edges));
}

/// P_c: c parallel edges from s=0 to t=1.
inline MultiDag make_pc(int c) {
  if (c < 1) throw Error(Errc::InvalidParameters, "c must be positive");
  return MultiDag::build(2, std::vector<Edge>(static_cast<std::size_t>(c), Edge{0, 1}));
}

// ---------------------------------------------------------------------------
// d-minor operations

enum class MinorOp { Deletion, BackwardContraction, ForwardContraction };

inline const char* minor_op_name(MinorOp op) {
  switch (op) {
    case MinorOp::Deletion: return "deletion";
    case MinorOp::BackwardContraction: return "backward_contraction";
    case MinorOp::ForwardContraction: return "forward_contraction";
  }
  return "unknown";
}

/// One d-minor step. Parallel edges are never merged. Surviving edges keep
/// their relative order; the vertex that disappears in a contraction is
/// dropped and the remaining ids are compacted.
inline MultiDag d_minor_step(const MultiDag& g, MinorOp op, EdgeId e) {
  if (e < 0 || e >= g.edge_count()) throw Error(Errc::UnknownEdge, e, "no such edge");
  const Edge target = g.edge(e);
  const auto fail = [&](const char* why) {
    return Error(Errc::PreconditionViolated, e, std::string(minor_op_name(op)) + ": " + why);
  };
  Vertex removed = -1, kept = -1;
  switch (op) {
    case MinorOp::Deletion:
      if (g.out_degree(target.tail) <= 1 || g.in_degree(target.head) <= 1) throw fail("endpoint degree too small");
      break;
    case MinorOp::BackwardContraction:
      if (g.in_degree(target.head) != 1) throw fail("head in-degree is not 1");
      removed = target.head;
      kept = target.tail;
      break;
    case MinorOp::ForwardContraction:
      if (g.out_degree(target.tail) != 1) throw fail("tail out-degree is not 1");
      removed = target.tail;
      kept = target.head;
      break;
  }
  std::vector<Vertex> new_id(static_cast<std::size_t>(g.vertex_count()));
  Vertex next = 0;
  for (Vertex v = 0; v < g.vertex_count(); ++v) new_id[static_cast<std::size_t>(v)] = (v == removed) ? -1 : next++;
  auto remap = [&](Vertex v) { return new_id[static_cast<std::size_t>(v == removed ? kept : v)]; };
  std::vector<Edge> edges;
  for (EdgeId i = 0; i < g.edge_count(); ++i) {
    if (i == e) continue;
    edges.push_back({remap(g.edge(i).tail), remap(g.edge(i).head)});
  }
  return MultiDag::build(next, std::move(edges));
}

// ---------------------------------------------------------------------------
// Width stability

struct WidthStability {
  bool stable = true;
  std::optional<std::pair<Vertex, Vertex>> witness;  // internal (u, v) of a CH_2 minor
};

/// Looks for a CH_2 d-minor, i.e. a funnel with a central path: internal
/// vertices u before v with in-degree(u) >= 2, out-degree(v) >= 2, a u-v
/// path, and vertex-disjoint paths s-v and u-t. The disjointness matters:
/// reachability alone accepts series-parallel graphs where both paths run
/// through a common cut vertex.
inline WidthStability is_width_stable(const MultiDag& g) {
  const auto n = static_cast<std::size_t>(g.vertex_count());
  const auto order = g.topological_order();
  std::vector<std::size_t> rank(n);
  for (std::size_t i = 0; i < n; ++i) rank[static_cast<std::size_t>(order[i])] = i;
  const Vertex s = g.source(), t = g.sink();

  std::vector<Vertex> splits;
  for (Vertex v : order)
    if (g.is_internal(v) && g.out_degree(v) >= 2) splits.push_back(v);
  if (splits.empty()) return {};
  // to_sink_avoiding[v][x]: x reaches t without passing v.
  std::vector<std::vector<char>> to_sink_avoiding(n);
  for (Vertex v : splits) {
    auto& r = to_sink_avoiding[static_cast<std::size_t>(v)];
    r.assign(n, 0);
    r[static_cast<std::size_t>(t)] = 1;
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      if (*it == v || *it == t) continue;
      for (EdgeId e : g.out_edges(*it))
        if (r[static_cast<std::size_t>(g.edge(e).head)]) {
          r[static_cast<std::size_t>(*it)] = 1;
          break;
        }
    }
  }

  // Two-pebble game for disjoint paths in a DAG: pebble a walks from s, b from u,
  // and only the pebble lower in topological order moves.
  std::vector<char> seen(n * n, 0);
  std::vector<std::size_t> touched, queue;
  for (Vertex u : order) {
    if (!g.is_internal(u) || g.in_degree(u) < 2) continue;
    std::vector<char> from_u(n, 0);
    from_u[static_cast<std::size_t>(u)] = 1;
    for (Vertex x : order)
      if (from_u[static_cast<std::size_t>(x)])
        for (EdgeId e : g.out_edges(x)) from_u[static_cast<std::size_t>(g.edge(e).head)] = 1;

    for (std::size_t i : touched) seen[i] = 0;
    touched.clear();
    queue.clear();
    auto push = [&](std::size_t a, std::size_t b) {
      const std::size_t key = a * n + b;
      if (a == b || seen[key]) return;
      seen[key] = 1;
      touched.push_back(key);
      queue.push_back(key);
    };
    push(static_cast<std::size_t>(s), static_cast<std::size_t>(u));
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const std::size_t a = queue[head] / n, b = queue[head] % n;
      const auto av = static_cast<Vertex>(a);
      if (av != u && g.is_internal(av) && g.out_degree(av) >= 2 && rank[a] > rank[static_cast<std::size_t>(u)] && from_u[a] &&
          to_sink_avoiding[a][b])
        return {false, std::make_pair(u, av)};
      if (rank[a] < rank[b]) {
        for (EdgeId e : g.out_edges(av)) push(static_cast<std::size_t>(g.edge(e).head), b);
      } else if (static_cast<Vertex>(b) != t) {
        for (EdgeId e : g.out_edges(static_cast<Vertex>(b))) push(a, static_cast<std::size_t>(g.edge(e).head));
      }
    }
  }
  return {};
}

// ---------------------------------------------------------------------------
// Parallel width

inline constexpr std::int64_t kDefaultPwBudget = 1'000'000;

struct ParallelWidth {
  Weight lower = 0;
  Weight upper = 0;
  bool exact = false;
  std::vector<EdgeId> cut;  // largest minimal cut-set found
  Flow witness;             // minimal flow of value |cut|
  std::int64_t nodes = 0;

  Weight value() const {
    if (!exact) throw Error(Errc::BudgetExceeded, "parallel width is only bounded");
    return lower;
  }
};

namespace detail {

// Minimal s-t cut-sets are exactly the out-cuts delta+(S) where S contains s,
// every vertex of S is reachable from s inside S, and every head of a cut
// edge reaches t outside S. The enumeration walks those sets S, growing them
// from s along out-edges.
class CutEnumerator {
 public:
  CutEnumerator(const MultiDag& g, std::int64_t budget, Weight stop_at)
      : g_(g), budget_(budget), stop_at_(stop_at),
        in_s_(static_cast<std::size_t>(g.vertex_count()), 0),
        banned_(static_cast<std::size_t>(g.vertex_count()), 0) {}

  /// True when the search finished or hit `stop_at`, false on budget.
  bool run() {
    in_s_[static_cast<std::size_t>(g_.source())] = 1;
    banned_[static_cast<std::size_t>(g_.sink())] = 1;
    try {
      grow();
    } catch (const Stop&) {
    } catch (const OutOfBudget&) {
      return false;
    }
    return true;
  }

  Weight best() const { return best_; }
  const std::vector<char>& best_set() const { return best_set_; }
  std::int64_t nodes() const { return nodes_; }

 private:
  struct Stop {};
  struct OutOfBudget {};

  void grow() {
    if (++nodes_ > budget_) throw OutOfBudget{};
    Vertex pick = -1;
    for (Vertex v = 0; v < g_.vertex_count() && pick < 0; ++v) {
      if (in_s_[static_cast<std::size_t>(v)] || banned_[static_cast<std::size_t>(v)]) continue;
      for (EdgeId e : g_.in_edges(v))
        if (in_s_[static_cast<std::size_t>(g_.edge(e).tail)]) {
          pick = v;
          break;
        }
    }
    if (pick < 0) {
      evaluate();
      return;
    }
    in_s_[static_cast<std::size_t>(pick)] = 1;
    grow();
    in_s_[static_cast<std::size_t>(pick)] = 0;
    banned_[static_cast<std::size_t>(pick)] = 1;
    grow();
    banned_[static_cast<std::size_t>(pick)] = 0;
  }

  void evaluate() {
    const auto n = static_cast<std::size_t>(g_.vertex_count());
    std::vector<char> to_t(n, 0);
    to_t[static_cast<std::size_t>(g_.sink())] = 1;
    auto order = g_.topological_order();
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const Vertex v = *it;
      if (in_s_[static_cast<std::size_t>(v)]) continue;
      for (EdgeId e : g_.out_edges(v))
        if (to_t[static_cast<std::size_t>(g_.edge(e).head)]) {
          to_t[static_cast<std::size_t>(v)] = 1;
          break;
        }
    }
    Weight size = 0;
    for (EdgeId e = 0; e < g_.edge_count(); ++e) {
      const Edge& ed = g_.edge(e);
      if (!in_s_[static_cast<std::size_t>(ed.tail)] || in_s_[static_cast<std::size_t>(ed.head)]) continue;
      if (!to_t[static_cast<std::size_t>(ed.head)]) return;
      ++size;
    }
    if (size > best_) {
      best_ = size;
      best_set_ = in_s_;
      if (best_ >= stop_at_) throw Stop{};
    }
  }

  const MultiDag& g_;
  std::int64_t budget_;
  Weight stop_at_;
  std::vector<char> in_s_;
  std::vector<char> banned_;
  std::vector<char> best_set_;
  Weight best_ = 0;
  std::int64_t nodes_ = 0;
};

// One s-t path per cut edge, staying inside S before the edge and outside S
// after it. Every s-t path crosses the cut, so the induced flow is minimal.
inline Flow cut_witness(const MultiDag& g, const std::vector<char>& in_s, std::vector<EdgeId>& cut) {
  const auto n = static_cast<std::size_t>(g.vertex_count());
  std::vector<EdgeId> pred(n, -1), succ(n, -1);
  for (Vertex v : g.topological_order()) {
    if (!in_s[static_cast<std::size_t>(v)] || v == g.source()) continue;
    for (EdgeId e : g.in_edges(v)) {
      const Vertex u = g.edge(e).tail;
      if (in_s[static_cast<std::size_t>(u)] && (u == g.source() || pred[static_cast<std::size_t>(u)] >= 0)) {
        pred[static_cast<std::size_t>(v)] = e;
        break;
      }
    }
  }
  auto order = g.topological_order();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const Vertex v = *it;
    if (in_s[static_cast<std::size_t>(v)] || v == g.sink()) continue;
    for (EdgeId e : g.out_edges(v)) {
      const Vertex w = g.edge(e).head;
      if (!in_s[static_cast<std::size_t>(w)] && (w == g.sink() || succ[static_cast<std::size_t>(w)] >= 0)) {
        succ[static_cast<std::size_t>(v)] = e;
        break;
      }
    }
  }
  Flow f(static_cast<std::size_t>(g.edge_count()), 0);
  cut.clear();
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edge(e);
    if (!in_s[static_cast<std::size_t>(ed.tail)] || in_s[static_cast<std::size_t>(ed.head)]) continue;
    cut.push_back(e);
    ++f[static_cast<std::size_t>(e)];
    for (Vertex v = ed.tail; v != g.source(); v = g.edge(pred[static_cast<std::size_t>(v)]).tail)
      ++f[static_cast<std::size_t>(pred[static_cast<std::size_t>(v)])];
    for (Vertex v = ed.head; v != g.sink(); v = g.edge(succ[static_cast<std::size_t>(v)]).head)
      ++f[static_cast<std::size_t>(succ[static_cast<std::size_t>(v)])];
  }
  return f;
}

}  // namespace detail

/// pw(G), the size of the largest minimal cut-set. Exhaustive within
/// `budget` search nodes; beyond that only bounds are reported.
inline ParallelWidth parallel_width(const MultiDag& g, std::int64_t budget = kDefaultPwBudget) {
  detail::CutEnumerator search(g, budget, std::numeric_limits<Weight>::max());
  const bool finished = search.run();
  ParallelWidth out;
  out.nodes = search.nodes();
  if (!search.best_set().empty()) out.witness = detail::cut_witness(g, search.best_set(), out.cut);
  if (finished) {
    out.lower = out.upper = search.best();
    out.exact = true;
  } else {
    out.lower = std::max(search.best(), width(g).value);
    out.upper = g.edge_count();
    out.exact = out.lower == out.upper;
  }
  return out;
}

/// True iff P_c is a d-minor of G, i.e. some minimal cut-set has at least c
/// edges: an out-tree from s reaching c edge tails and an in-tree from their
/// heads to t, disjoint from those edges.
inline bool has_pc_minor(const MultiDag& g, int c, std::int64_t budget = kDefaultPwBudget) {
  if (c < 1) throw Error(Errc::InvalidParameters, "c must be positive");
  if (c > g.edge_count()) return false;
  detail::CutEnumerator search(g, budget, c);
  if (!search.run()) throw Error(Errc::BudgetExceeded, "P_c minor search ran out of budget");
  return search.best() >= c;
}

/// Width, parallel width and width stability of one graph.
struct StructureReport {
  Weight width = 0;
  ParallelWidth parallel_width;
  WidthStability stability;
};

inline StructureReport analyze_structure(const MultiDag& g, std::int64_t pw_budget = kDefaultPwBudget) {
  return {width(g).value, parallel_width(g, pw_budget), is_width_stable(g)};
}

}  // namespace flowdec
