#pragma once

#include <algorithm>
#include <limits>
#include <vector>

#include "flowdec/error.hpp"

namespace flowdec::detail {

/// Stand-in for an unbounded capacity. Large enough to never bind on the
/// instances here, small enough that sums of a few of them do not overflow.
inline constexpr Weight kUnbounded = std::numeric_limits<Weight>::max() / 4;

/// Dinic's algorithm: augments along shortest residual paths, scanning arcs
/// in insertion order so the result is deterministic.
class MaxFlow {
 public:
  explicit MaxFlow(int node_count) : adj_(static_cast<std::size_t>(node_count)) {}

  /// Returns an arc handle usable with `flow_on`.
  int add_arc(int from, int to, Weight capacity) {
    int id = static_cast<int>(arcs_.size());
    arcs_.push_back({to, capacity, capacity});
    arcs_.push_back({from, 0, 0});
    adj_[static_cast<std::size_t>(from)].push_back(id);
    adj_[static_cast<std::size_t>(to)].push_back(id + 1);
    return id;
  }

  Weight flow_on(int arc) const {
    const Arc& a = arcs_[static_cast<std::size_t>(arc)];
    return a.original - a.residual;
  }

  Weight run(int source, int sink) {
    Weight total = 0;
    while (bfs(source, sink)) {
      next_.assign(adj_.size(), 0);
      while (Weight pushed = dfs(source, sink, kUnbounded)) total = checked_add(total, pushed);
    }
    return total;
  }

 private:
  struct Arc {
    int to;
    Weight residual;
    Weight original;
  };

  bool bfs(int source, int sink) {
    level_.assign(adj_.size(), -1);
    std::vector<int> queue{source};
    level_[static_cast<std::size_t>(source)] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      int v = queue[head];
      for (int id : adj_[static_cast<std::size_t>(v)]) {
        const Arc& a = arcs_[static_cast<std::size_t>(id)];
        if (a.residual > 0 && level_[static_cast<std::size_t>(a.to)] < 0) {
          level_[static_cast<std::size_t>(a.to)] = level_[static_cast<std::size_t>(v)] + 1;
          queue.push_back(a.to);
        }
      }
    }
    return level_[static_cast<std::size_t>(sink)] >= 0;
  }

  Weight dfs(int v, int sink, Weight limit) {
    if (v == sink) return limit;
    auto& edges = adj_[static_cast<std::size_t>(v)];
    for (auto& i = next_[static_cast<std::size_t>(v)]; i < edges.size(); ++i) {
      int id = edges[i];
      Arc& a = arcs_[static_cast<std::size_t>(id)];
      if (a.residual <= 0 || level_[static_cast<std::size_t>(a.to)] != level_[static_cast<std::size_t>(v)] + 1) continue;
      if (Weight pushed = dfs(a.to, sink, std::min(limit, a.residual))) {
        a.residual -= pushed;
        arcs_[static_cast<std::size_t>(id ^ 1)].residual += pushed;
        return pushed;
      }
    }
    return 0;
  }

  std::vector<Arc> arcs_;
  std::vector<std::vector<int>> adj_;
  std::vector<int> level_;
  std::vector<std::size_t> next_;
};

}  // namespace flowdec::detail
