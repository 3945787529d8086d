#pragma once

#include <map>
#include <string>
#include <vector>

#include "flowdec/graph.hpp"

namespace flowdec {

/// An s-t walk given by edge ids, carrying a positive weight. `iteration`
/// is the parity-fixing round that produced the path (weight 2^iteration),
/// or -1 for other algorithms.
struct WeightedPath {
  std::vector<EdgeId> edges;
  Weight weight = 0;
  int iteration = -1;

  friend bool operator==(const WeightedPath&, const WeightedPath&) = default;
};

enum class Algorithm { ParityFix, Greedy, Exact, Witness };

inline const char* algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::ParityFix: return "parityfix";
    case Algorithm::Greedy: return "greedy";
    case Algorithm::Exact: return "exact";
    case Algorithm::Witness: return "witness";
  }
  return "unknown";
}

struct Decomposition {
  std::vector<WeightedPath> paths;
  Algorithm algorithm = Algorithm::Witness;

  std::size_t size() const noexcept { return paths.size(); }
};

enum class Violation { None, EmptyPath, UnknownEdge, BrokenWalk, NotFromSource, NotToSink, NonPositiveWeight, UnderSum, OverSum };

inline const char* violation_name(Violation v) {
  switch (v) {
    case Violation::None: return "None";
    case Violation::EmptyPath: return "EmptyPath";
    case Violation::UnknownEdge: return "UnknownEdge";
    case Violation::BrokenWalk: return "BrokenWalk";
    case Violation::NotFromSource: return "NotFromSource";
    case Violation::NotToSink: return "NotToSink";
    case Violation::NonPositiveWeight: return "NonPositiveWeight";
    case Violation::UnderSum: return "UnderSum";
    case Violation::OverSum: return "OverSum";
  }
  return "Unknown";
}

/// First violation found. `index` is a path index for walk and weight
/// problems and an edge id for sum mismatches.
struct Verdict {
  Violation violation = Violation::None;
  std::int64_t index = -1;

  bool ok() const noexcept { return violation == Violation::None; }
  explicit operator bool() const noexcept { return ok(); }

  std::string describe() const {
    if (ok()) return "ok";
    return std::string(violation_name(violation)) + "(" + std::to_string(index) + ")";
  }
};

inline Verdict verify(const FlowNetwork& net, const Decomposition& d) {
  const MultiDag& g = net.graph();
  std::vector<Weight> sum(static_cast<std::size_t>(g.edge_count()), 0);
  for (std::size_t p = 0; p < d.paths.size(); ++p) {
    const auto idx = static_cast<std::int64_t>(p);
    const WeightedPath& path = d.paths[p];
    if (path.edges.empty()) return {Violation::EmptyPath, idx};
    if (path.weight < 1) return {Violation::NonPositiveWeight, idx};
    for (EdgeId e : path.edges)
      if (e < 0 || e >= g.edge_count()) return {Violation::UnknownEdge, idx};
    if (g.edge(path.edges.front()).tail != g.source()) return {Violation::NotFromSource, idx};
    for (std::size_t i = 1; i < path.edges.size(); ++i)
      if (g.edge(path.edges[i - 1]).head != g.edge(path.edges[i]).tail) return {Violation::BrokenWalk, idx};
    if (g.edge(path.edges.back()).head != g.sink()) return {Violation::NotToSink, idx};
    for (EdgeId e : path.edges) {
      auto& s = sum[static_cast<std::size_t>(e)];
      if (__builtin_add_overflow(s, path.weight, &s)) return {Violation::OverSum, e};
    }
  }
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const Weight have = sum[static_cast<std::size_t>(e)];
    if (have < net.flow(e)) return {Violation::UnderSum, e};
    if (have > net.flow(e)) return {Violation::OverSum, e};
  }
  return {};
}

/// Sums the weights of paths with identical edge sequences. Order follows the
/// first occurrence of each route.
inline Decomposition merge_identical_paths(const Decomposition& d) {
  Decomposition out;
  out.algorithm = d.algorithm;
  std::map<std::vector<EdgeId>, std::size_t> seen;
  for (const WeightedPath& p : d.paths) {
    auto [it, fresh] = seen.try_emplace(p.edges, out.paths.size());
    if (fresh) {
      out.paths.push_back({p.edges, p.weight, -1});
    } else {
      auto& w = out.paths[it->second].weight;
      w = checked_add(w, p.weight);
    }
  }
  return out;
}

/// Maps a decomposition of a contracted subnetwork back to the parent ids.
inline Decomposition expand_decomposition(const Decomposition& d, const std::vector<std::vector<EdgeId>>& chains,
                                          const std::vector<EdgeId>& parent_edge) {
  Decomposition out;
  out.algorithm = d.algorithm;
  for (const WeightedPath& p : d.paths) out.paths.push_back({map_edges(parent_edge, expand_path(chains, p.edges)), p.weight, p.iteration});
  return out;
}

}  // namespace flowdec
