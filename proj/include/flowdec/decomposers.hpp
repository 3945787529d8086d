#pragma once

#include <vector>

#include "flowdec/decomposition.hpp"
#include "flowdec/min_flow.hpp"

namespace flowdec {

struct IterationStat {
  int index;         // i
  Weight value;      // val(f_i)
  Weight flow_width; // fwidth of the flow the round worked on
};

struct DecompositionStats {
  std::size_t size = 0;
  Weight lower_bound = 0;  // fwidth(G, f)
  int log_factor = 0;      // floor(log2 ||f||) + 1
  std::vector<IterationStat> iterations;
};

/// fwidth(G, f), a lower bound on every decomposition size.
inline Weight mfd_lower_bound(const FlowNetwork& net) { return flow_width(net).value; }

struct ParityFixResult {
  Decomposition decomposition;
  DecompositionStats stats;
};

/// Parity fixing: each round subtracts a minimum flow covering the odd edges,
/// emits its unit paths at weight 2^i, and halves what is left.
inline ParityFixResult parity_fix_decompose(const FlowNetwork& net) {
  if (net.value() == 0) throw Error(Errc::EmptyFlow, "flow value is zero");
  ParityFixResult out;
  out.decomposition.algorithm = Algorithm::ParityFix;
  out.stats.log_factor = net.log_factor();
  out.stats.lower_bound = mfd_lower_bound(net);

  FlowNetwork current = net;
  for (int i = 0; current.value() > 0; ++i) {
    const Weight fw = flow_width(current).value;
    Flow h = parity_cover_flow(current);
    auto h_net = FlowNetwork::unchecked(net.graph_ptr(), h);
    const Weight weight = checked_pow2(i);
    for (auto& edges : extract_unit_paths(h_net)) out.decomposition.paths.push_back({std::move(edges), weight, i});

    const Weight value = h_net.value();
    if (value > fw) throw Error(Errc::ParityAssertionFailed, i, "parity flow exceeds the flow-width");
    out.stats.iterations.push_back({i, value, fw});

    Flow next = current.flow();
    for (std::size_t e = 0; e < next.size(); ++e) {
      const Weight rest = next[e] - h[e];
      if (rest % 2 != 0) throw Error(Errc::ParityAssertionFailed, static_cast<std::int64_t>(e), "remainder is odd");
      next[e] = rest / 2;
    }
    current = FlowNetwork::unchecked(net.graph_ptr(), std::move(next));
  }
  out.stats.size = out.decomposition.size();
  return out;
}

/// Repeatedly removes a maximum-bottleneck s-t path over positive edges.
/// Ties go to the smallest edge id at each vertex.
inline Decomposition greedy_decompose(const FlowNetwork& net) {
  if (net.value() == 0) throw Error(Errc::EmptyFlow, "flow value is zero");
  const MultiDag& g = net.graph();
  const auto n = static_cast<std::size_t>(g.vertex_count());
  Flow left = net.flow();
  Decomposition d;
  d.algorithm = Algorithm::Greedy;

  auto remaining = [&] {
    Weight total = 0;
    for (EdgeId e : g.out_edges(g.source())) total += left[static_cast<std::size_t>(e)];
    return total;
  };
  while (remaining() > 0) {
    std::vector<Weight> best(n, 0);
    std::vector<EdgeId> via(n, -1);
    best[static_cast<std::size_t>(g.source())] = std::numeric_limits<Weight>::max();
    for (Vertex v : g.topological_order()) {
      if (v == g.source()) continue;
      for (EdgeId e : g.in_edges(v)) {
        const Weight cand = std::min(best[static_cast<std::size_t>(g.edge(e).tail)], left[static_cast<std::size_t>(e)]);
        if (cand > best[static_cast<std::size_t>(v)]) {
          best[static_cast<std::size_t>(v)] = cand;
          via[static_cast<std::size_t>(v)] = e;
        }
      }
    }
    const Weight bottleneck = best[static_cast<std::size_t>(g.sink())];
    if (bottleneck <= 0) throw Error(Errc::ConservationViolated, "greedy found no positive path");
    WeightedPath p;
    p.weight = bottleneck;
    for (Vertex v = g.sink(); v != g.source(); v = g.edge(via[static_cast<std::size_t>(v)]).tail)
      p.edges.push_back(via[static_cast<std::size_t>(v)]);
    std::reverse(p.edges.begin(), p.edges.end());
    for (EdgeId e : p.edges) left[static_cast<std::size_t>(e)] -= bottleneck;
    d.paths.push_back(std::move(p));
  }
  return d;
}

}  // namespace flowdec
