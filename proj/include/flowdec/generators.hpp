#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "flowdec/decomposition.hpp"
#include "flowdec/min_flow.hpp"
#include "flowdec/structure.hpp"

namespace flowdec {

enum class Family { Genset, ThreePartition, Chk, Pc, RandomPaths, SeriesParallel, Adversarial };

inline const char* family_name(Family f) {
  switch (f) {
    case Family::Genset: return "genset";
    case Family::ThreePartition: return "threepart";
    case Family::Chk: return "chk";
    case Family::Pc: return "pc";
    case Family::RandomPaths: return "random_paths";
    case Family::SeriesParallel: return "series_parallel";
    case Family::Adversarial: return "adversarial";
  }
  return "unknown";
}

inline std::optional<Family> family_from_name(std::string_view name) {
  for (Family f : {Family::Genset, Family::ThreePartition, Family::Chk, Family::Pc, Family::RandomPaths,
                   Family::SeriesParallel, Family::Adversarial})
    if (name == family_name(f)) return f;
  return std::nullopt;
}

/// Parameter layouts:
///   genset          a_1 ... a_n
///   threepart       B a_1 ... a_3q
///   chk             k
///   pc              c
///   random_paths    n k max_weight
///   series_parallel depth [max_weight = 100]
///   adversarial     k l
struct InstanceSpec {
  Family family = Family::Genset;
  std::vector<std::int64_t> parameters;
  std::uint64_t seed = 0;
};

struct GeneratedInstance {
  FlowNetwork network;
  std::optional<Decomposition> witness;
};

/// mt19937_64 with a fixed reduction so streams match across standard
/// libraries (distribution objects are implementation-defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform-ish integer in [lo, hi]; modulo bias is irrelevant here.
  std::int64_t between(std::int64_t lo, std::int64_t hi) {
    if (hi < lo) throw Error(Errc::InvalidParameters, "empty range");
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(span == 0 ? engine_() : engine_() % span);
  }

  bool chance(int numerator, int denominator) { return between(1, denominator) <= numerator; }

 private:
  std::mt19937_64 engine_;
};

namespace detail {

// Accumulates edges and weighted paths; the flow is the sum of the paths.
class PathSystem {
 public:
  EdgeId edge(Vertex tail, Vertex head) {
    edges_.push_back({tail, head});
    return static_cast<EdgeId>(edges_.size() - 1);
  }
  void path(std::vector<EdgeId> edges, Weight weight) { paths_.push_back({std::move(edges), weight, -1}); }

  GeneratedInstance finish(int vertex_count) {
    auto graph = share(MultiDag::build(vertex_count, std::move(edges_)));
    Flow f(static_cast<std::size_t>(graph->edge_count()), 0);
    for (const auto& p : paths_)
      for (EdgeId e : p.edges) f[static_cast<std::size_t>(e)] = checked_add(f[static_cast<std::size_t>(e)], p.weight);
    GeneratedInstance out{validate(graph, std::move(f)), Decomposition{std::move(paths_), Algorithm::Witness}};
    if (!verify(out.network, *out.witness)) throw Error(Errc::PreconditionViolated, "generator witness does not verify");
    return out;
  }

 private:
  std::vector<Edge> edges_;
  std::vector<WeightedPath> paths_;
};

inline std::vector<std::array<int, 3>> find_3partition(const std::vector<Weight>& a, Weight target) {
  const int n = static_cast<int>(a.size());
  std::vector<char> used(static_cast<std::size_t>(n), 0);
  std::vector<std::array<int, 3>> triples;
  auto solve = [&](auto&& self) -> bool {
    int first = 0;
    while (first < n && used[static_cast<std::size_t>(first)]) ++first;
    if (first == n) return true;
    used[static_cast<std::size_t>(first)] = 1;
    for (int j = first + 1; j < n; ++j) {
      if (used[static_cast<std::size_t>(j)]) continue;
      for (int k = j + 1; k < n; ++k) {
        if (used[static_cast<std::size_t>(k)] || a[first] + a[j] + a[k] != target) continue;
        used[static_cast<std::size_t>(j)] = used[static_cast<std::size_t>(k)] = 1;
        triples.push_back({first, j, k});
        if (self(self)) return true;
        triples.pop_back();
        used[static_cast<std::size_t>(j)] = used[static_cast<std::size_t>(k)] = 0;
      }
    }
    used[static_cast<std::size_t>(first)] = 0;
    return false;
  };
  if (!solve(solve)) triples.clear();
  return triples;
}

}  // namespace detail

/// Width-2 chain n_0 = s, ..., n_|A| = t. Gadget i has a top edge carrying
/// a_i and a bottom edge carrying (sum A + 1) - a_i. The witness uses one
/// path per a_i plus an all-bottom unit path.
inline GeneratedInstance gen_genset(const std::vector<Weight>& a) {
  if (a.empty()) throw Error(Errc::InvalidParameters, "genset needs at least one value");
  Weight total = 1;
  for (Weight x : a) {
    if (x < 1) throw Error(Errc::InvalidParameters, "genset values must be positive");
    total = checked_add(total, x);
  }
  detail::PathSystem sys;
  std::vector<EdgeId> top, bottom;
  for (std::size_t i = 0; i < a.size(); ++i) {
    top.push_back(sys.edge(static_cast<Vertex>(i), static_cast<Vertex>(i + 1)));
    bottom.push_back(sys.edge(static_cast<Vertex>(i), static_cast<Vertex>(i + 1)));
  }
  for (std::size_t j = 0; j < a.size(); ++j) {
    std::vector<EdgeId> p;
    for (std::size_t i = 0; i < a.size(); ++i) p.push_back(i == j ? top[i] : bottom[i]);
    sys.path(std::move(p), a[j]);
  }
  sys.path(bottom, 1);
  return sys.finish(static_cast<int>(a.size()) + 1);
}

struct ThreePartitionInstance {
  GeneratedInstance instance;
  std::optional<std::vector<std::array<int, 3>>> partition;  // indices into a
};

/// Width-3 ladder. Top component: gadgets i = 1..3q with rails A_i -> A_i+1
/// and B_i -> B_i+1, vertical A_i -> B_i and diagonal B_i -> A_i+1. The
/// bottom component repeats the pattern with q gadgets (rails C, D). A unit
/// path zigzags through every vertical and diagonal; heavy paths of weight
/// (3q+2) a_i cross exactly one vertical per component.
inline ThreePartitionInstance gen_3partition(const std::vector<Weight>& a, Weight bound,
                                             std::optional<std::vector<std::array<int, 3>>> partition = std::nullopt) {
  if (a.empty() || a.size() % 3 != 0) throw Error(Errc::InvalidParameters, "need 3q values");
  const int n = static_cast<int>(a.size());
  const int q = n / 3;
  Weight sum = 0;
  for (Weight x : a) {
    if (!(4 * x > bound && 2 * x < bound)) throw Error(Errc::InvalidParameters, "values must lie strictly in (B/4, B/2)");
    sum = checked_add(sum, x);
  }
  if (sum != checked_mul(q, bound)) throw Error(Errc::InvalidParameters, "values must sum to qB");
  if (partition) {
    std::vector<int> seen(static_cast<std::size_t>(n), 0);
    if (static_cast<int>(partition->size()) != q) throw Error(Errc::InvalidParameters, "partition must have q triples");
    for (const auto& t : *partition) {
      Weight s = 0;
      for (int i : t) {
        if (i < 0 || i >= n || seen[static_cast<std::size_t>(i)]++) throw Error(Errc::InvalidParameters, "bad partition index");
        s += a[static_cast<std::size_t>(i)];
      }
      if (s != bound) throw Error(Errc::InvalidParameters, "partition triple does not sum to B");
    }
  } else if (n <= 18) {
    auto found = detail::find_3partition(a, bound);
    if (!found.empty()) partition = std::move(found);
  }

  const Weight factor = 3 * static_cast<Weight>(q) + 2;
  auto A = [](int i) { return 2 * i; };
  auto B = [](int i) { return 2 * i + 1; };
  auto C = [n](int j) { return 2 * n + 2 * j; };
  auto D = [n](int j) { return 2 * n + 2 * j + 1; };

  detail::PathSystem sys;
  std::vector<EdgeId> rail_a, rail_b, vert, diag, rail_c, rail_d, wvert, wdiag;
  for (int i = 0; i < n; ++i) {
    if (i + 1 < n) rail_a.push_back(sys.edge(A(i), A(i + 1)));
    vert.push_back(sys.edge(A(i), B(i)));
    if (i + 1 < n) {
      rail_b.push_back(sys.edge(B(i), B(i + 1)));
      diag.push_back(sys.edge(B(i), A(i + 1)));
    }
  }
  const EdgeId connector = sys.edge(B(n - 1), C(0));
  for (int j = 0; j < q; ++j) {
    if (j + 1 < q) rail_c.push_back(sys.edge(C(j), C(j + 1)));
    wvert.push_back(sys.edge(C(j), D(j)));
    if (j + 1 < q) {
      rail_d.push_back(sys.edge(D(j), D(j + 1)));
      wdiag.push_back(sys.edge(D(j), C(j + 1)));
    }
  }

  std::vector<EdgeId> unit;
  for (int i = 0; i < n; ++i) {
    unit.push_back(vert[static_cast<std::size_t>(i)]);
    if (i + 1 < n) unit.push_back(diag[static_cast<std::size_t>(i)]);
  }
  unit.push_back(connector);
  for (int j = 0; j < q; ++j) {
    unit.push_back(wvert[static_cast<std::size_t>(j)]);
    if (j + 1 < q) unit.push_back(wdiag[static_cast<std::size_t>(j)]);
  }
  sys.path(unit, 1);

  // Items in partition order fill the bottom verticals exactly; without a
  // partition a northwest-corner split keeps the bottom flows intact.
  std::vector<int> order;
  if (partition) {
    for (const auto& t : *partition) order.insert(order.end(), t.begin(), t.end());
  } else {
    order.resize(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
  }
  int slot = 0;
  Weight room = checked_mul(factor, bound);
  for (int i : order) {
    Weight left = checked_mul(factor, a[static_cast<std::size_t>(i)]);
    while (left > 0) {
      const Weight piece = std::min(left, room);
      std::vector<EdgeId> p;
      for (int r = 0; r < i; ++r) p.push_back(rail_a[static_cast<std::size_t>(r)]);
      p.push_back(vert[static_cast<std::size_t>(i)]);
      for (int r = i; r + 1 < n; ++r) p.push_back(rail_b[static_cast<std::size_t>(r)]);
      p.push_back(connector);
      for (int r = 0; r < slot; ++r) p.push_back(rail_c[static_cast<std::size_t>(r)]);
      p.push_back(wvert[static_cast<std::size_t>(slot)]);
      for (int r = slot; r + 1 < q; ++r) p.push_back(rail_d[static_cast<std::size_t>(r)]);
      sys.path(std::move(p), piece);
      left -= piece;
      room -= piece;
      if (room == 0 && slot + 1 < q) {
        ++slot;
        room = checked_mul(factor, bound);
      }
    }
  }
  ThreePartitionInstance out{sys.finish(2 * n + 2 * q), std::move(partition)};
  if (width(out.instance.network.graph_ptr()).value != 3)
    throw Error(Errc::PreconditionViolated, "3-partition ladder does not have width 3");
  return out;
}

/// G_(k,l): source s feeds the in-vertex of every central gadget X1, Y1..Yl,
/// X2. An X gadget has k parallel edges of flow 2 and 2k of flow 3; a Y
/// gadget has k of flow 2 and two of flow 3k. Bold connectors of flow 2k
/// chain the gadgets, and every out-vertex exits to t.
inline GeneratedInstance gen_adversarial(int k, int l) {
  if (k < 3 || k % 2 == 0) throw Error(Errc::InvalidParameters, "k must be odd and at least 3");
  if (l < 1) throw Error(Errc::InvalidParameters, "l must be positive");
  const int gadgets = l + 2;
  const Vertex s = 0, t = 2 * gadgets + 1;
  auto in = [](int g) { return 1 + 2 * g; };
  auto out = [](int g) { return 2 + 2 * g; };

  detail::PathSystem sys;
  std::vector<std::vector<EdgeId>> twos(static_cast<std::size_t>(gadgets));
  std::vector<EdgeId> entry, exit, bold;
  struct Heavy {
    int gadget;
    EdgeId edge;
    Weight weight;
  };
  std::vector<Heavy> heavy;
  for (int g = 0; g < gadgets; ++g) {
    const bool is_x = g == 0 || g == gadgets - 1;
    entry.push_back(sys.edge(s, in(g)));
    for (int i = 0; i < k; ++i) twos[static_cast<std::size_t>(g)].push_back(sys.edge(in(g), out(g)));
    const int count = is_x ? 2 * k : 2;
    const Weight w = is_x ? 3 : 3 * static_cast<Weight>(k);
    for (int i = 0; i < count; ++i) heavy.push_back({g, sys.edge(in(g), out(g)), w});
    exit.push_back(sys.edge(out(g), t));
    if (g + 1 < gadgets) bold.push_back(sys.edge(out(g), in(g + 1)));
  }
  for (int i = 0; i < k; ++i) {
    std::vector<EdgeId> p{entry.front()};
    for (int g = 0; g < gadgets; ++g) {
      p.push_back(twos[static_cast<std::size_t>(g)][static_cast<std::size_t>(i)]);
      p.push_back(g + 1 < gadgets ? bold[static_cast<std::size_t>(g)] : exit.back());
    }
    sys.path(std::move(p), 2);
  }
  for (const Heavy& h : heavy)
    sys.path({entry[static_cast<std::size_t>(h.gadget)], h.edge, exit[static_cast<std::size_t>(h.gadget)]}, h.weight);
  return sys.finish(t + 1);
}

/// k random s-t paths over vertices 0..n-1 (increasing ids), reusing existing
/// edges most of the time. Unused vertices are dropped.
inline GeneratedInstance gen_random_paths(int n, int k, Weight max_weight, std::uint64_t seed) {
  if (n < 2 || k < 1 || max_weight < 1) throw Error(Errc::InvalidParameters, "need n >= 2, k >= 1, max_weight >= 1");
  Rng rng(seed);
  std::vector<Edge> edges;
  std::vector<std::vector<EdgeId>> between;  // indexed by tail * n + head
  between.resize(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  std::vector<std::pair<std::vector<EdgeId>, Weight>> paths;
  for (int p = 0; p < k; ++p) {
    std::vector<Vertex> walk{0};
    for (Vertex v = 1; v + 1 < n; ++v)
      if (rng.chance(1, 2)) walk.push_back(v);
    walk.push_back(n - 1);
    std::vector<EdgeId> route;
    for (std::size_t i = 0; i + 1 < walk.size(); ++i) {
      auto& bucket = between[static_cast<std::size_t>(walk[i]) * static_cast<std::size_t>(n) + static_cast<std::size_t>(walk[i + 1])];
      if (bucket.empty() || rng.chance(1, 4)) {
        bucket.push_back(static_cast<EdgeId>(edges.size()));
        edges.push_back({walk[i], walk[i + 1]});
        route.push_back(bucket.back());
      } else {
        route.push_back(bucket[static_cast<std::size_t>(rng.between(0, static_cast<std::int64_t>(bucket.size()) - 1))]);
      }
    }
    paths.emplace_back(std::move(route), rng.between(1, max_weight));
  }
  std::vector<Vertex> new_id(static_cast<std::size_t>(n), -1);
  for (const Edge& e : edges) new_id[static_cast<std::size_t>(e.tail)] = new_id[static_cast<std::size_t>(e.head)] = 0;
  int used = 0;
  for (auto& id : new_id)
    if (id == 0) id = used++;
  detail::PathSystem sys;
  for (const Edge& e : edges) sys.edge(new_id[static_cast<std::size_t>(e.tail)], new_id[static_cast<std::size_t>(e.head)]);
  for (auto& [route, w] : paths) sys.path(std::move(route), w);
  return sys.finish(used);
}

/// Random series/parallel composition between s = 0 and t = 1.
inline MultiDag gen_series_parallel(int depth, std::uint64_t seed) {
  if (depth < 0) throw Error(Errc::InvalidParameters, "depth must be non-negative");
  Rng rng(seed);
  std::vector<Edge> edges;
  int vertices = 2;
  auto grow = [&](auto&& self, Vertex x, Vertex y, int d, bool root) -> void {
    if (d == 0 || (!root && rng.chance(1, 4))) {
      edges.push_back({x, y});
      return;
    }
    if (rng.chance(1, 2)) {
      const Vertex z = vertices++;
      self(self, x, z, d - 1, false);
      self(self, z, y, d - 1, false);
    } else {
      const auto branches = rng.between(2, 3);
      for (std::int64_t b = 0; b < branches; ++b) self(self, x, y, d - 1, false);
    }
  };
  grow(grow, 0, 1, depth, true);
  return MultiDag::build(vertices, std::move(edges));
}

/// A flow covering every edge: for each edge (in id order) one random s-t
/// path through it with weight in [1, max_weight]. Returns the paths too.
inline GeneratedInstance random_cover_flow(const GraphPtr& graph, Weight max_weight, Rng& rng) {
  if (max_weight < 1) throw Error(Errc::InvalidParameters, "max_weight must be positive");
  const MultiDag& g = *graph;
  auto pick = [&](std::span<const EdgeId> options) {
    return options[static_cast<std::size_t>(rng.between(0, static_cast<std::int64_t>(options.size()) - 1))];
  };
  Flow f(static_cast<std::size_t>(g.edge_count()), 0);
  Decomposition witness;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    std::vector<EdgeId> back, fwd;
    for (Vertex v = g.edge(e).tail; v != g.source();) {
      const EdgeId x = pick(g.in_edges(v));
      back.push_back(x);
      v = g.edge(x).tail;
    }
    for (Vertex v = g.edge(e).head; v != g.sink();) {
      const EdgeId x = pick(g.out_edges(v));
      fwd.push_back(x);
      v = g.edge(x).head;
    }
    std::vector<EdgeId> route(back.rbegin(), back.rend());
    route.push_back(e);
    route.insert(route.end(), fwd.begin(), fwd.end());
    const Weight w = rng.between(1, max_weight);
    for (EdgeId x : route) f[static_cast<std::size_t>(x)] = checked_add(f[static_cast<std::size_t>(x)], w);
    witness.paths.push_back({std::move(route), w, -1});
  }
  return {validate(graph, std::move(f)), std::move(witness)};
}

/// Reference graph with its parallel-width witness as the flow.
inline GeneratedInstance reference_instance(MultiDag g) {
  auto graph = share(std::move(g));
  ParallelWidth pw = parallel_width(*graph);
  return {validate(graph, pw.witness), std::nullopt};
}

inline GeneratedInstance generate(const InstanceSpec& spec) {
  const auto& p = spec.parameters;
  auto need = [&](std::size_t lo, std::size_t hi) {
    if (p.size() < lo || p.size() > hi)
      throw Error(Errc::InvalidParameters, std::string(family_name(spec.family)) + ": wrong number of parameters");
  };
  auto small = [](std::int64_t x) {
    if (x < std::numeric_limits<int>::min() || x > std::numeric_limits<int>::max())
      throw Error(Errc::InvalidParameters, "parameter out of range");
    return static_cast<int>(x);
  };
  switch (spec.family) {
    case Family::Genset:
      need(1, SIZE_MAX);
      return gen_genset(p);
    case Family::ThreePartition:
      need(4, SIZE_MAX);
      return gen_3partition(std::vector<Weight>(p.begin() + 1, p.end()), p[0]).instance;
    case Family::Chk:
      need(1, 1);
      return reference_instance(make_chk(small(p[0])));
    case Family::Pc:
      need(1, 1);
      return reference_instance(make_pc(small(p[0])));
    case Family::RandomPaths:
      need(3, 3);
      return gen_random_paths(small(p[0]), small(p[1]), p[2], spec.seed);
    case Family::SeriesParallel: {
      need(1, 2);
      if (small(p[0]) > 12) throw Error(Errc::InvalidParameters, "series_parallel depth is capped at 12");
      auto graph = share(gen_series_parallel(small(p[0]), spec.seed));
      Rng rng(spec.seed ^ 0x9e3779b97f4a7c15ULL);
      return random_cover_flow(graph, p.size() > 1 ? p[1] : 100, rng);
    }
    case Family::Adversarial:
      need(2, 2);
      return gen_adversarial(small(p[0]), small(p[1]));
  }
  throw Error(Errc::InvalidParameters, "unknown family");
}

}  // namespace flowdec
