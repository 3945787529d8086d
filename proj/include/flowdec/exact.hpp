#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <vector>

#include "flowdec/decomposers.hpp"

namespace flowdec {

struct ExactLimits {
  std::int64_t node_budget = 2'000'000;
};

struct ExactResult {
  Decomposition decomposition;
  bool optimal = false;
  Weight lower_bound = 0;
  std::int64_t nodes = 0;
};

namespace detail {

// Exact rational over 128-bit integers; the systems solved here have 0/1
// coefficients and at most a dozen unknowns.
class Rational {
 public:
  Rational() = default;
  Rational(__int128 n, __int128 d = 1) : num_(n), den_(d) { normalize(); }

  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }
  __int128 num() const { return num_; }
  int sign() const { return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0); }

  friend Rational operator-(const Rational& a, const Rational& b) { return {a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_}; }
  friend Rational operator*(const Rational& a, const Rational& b) { return {a.num_ * b.num_, a.den_ * b.den_}; }
  friend Rational operator/(const Rational& a, const Rational& b) { return {a.num_ * b.den_, a.den_ * b.num_}; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.num_ * b.den_ < b.num_ * a.den_; }

 private:
  static __int128 gcd(__int128 a, __int128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
      __int128 t = a % b;
      a = b;
      b = t;
    }
    return a;
  }
  void normalize() {
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    __int128 g = gcd(num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  __int128 num_ = 0;
  __int128 den_ = 1;
};

// Path weights constrained by sum_{i in S_e} w_i = f(e), kept in reduced
// row echelon form. Every unknown is a positive integer.
class WeightSystem {
 public:
  explicit WeightSystem(int unknowns) : k_(unknowns) {}

  /// Adds one edge equation. False when the system becomes inconsistent or
  /// forces a weight below 1 or a fractional weight.
  bool add(const std::vector<int>& members, Weight value) {
    Row eq{std::vector<Rational>(static_cast<std::size_t>(k_)), Rational(value), -1};
    for (int i : members) eq.coef[static_cast<std::size_t>(i)] = Rational(1);
    for (const Row& r : rows_) {
      Rational c = eq.coef[static_cast<std::size_t>(r.pivot)];
      if (!c.is_zero()) subtract(eq, r, c);
    }
    int pivot = -1;
    for (int j = 0; j < k_; ++j)
      if (!eq.coef[static_cast<std::size_t>(j)].is_zero()) {
        pivot = j;
        break;
      }
    if (pivot < 0) return eq.rhs.is_zero();
    Rational lead = eq.coef[static_cast<std::size_t>(pivot)];
    for (auto& c : eq.coef) c = c / lead;
    eq.rhs = eq.rhs / lead;
    eq.pivot = pivot;
    for (Row& r : rows_) {
      Rational c = r.coef[static_cast<std::size_t>(pivot)];
      if (!c.is_zero()) subtract(r, eq, c);
    }
    rows_.push_back(std::move(eq));
    return plausible();
  }

  bool full_rank() const { return static_cast<int>(rows_.size()) == k_; }

  std::vector<int> free_unknowns() const {
    std::vector<char> pivot(static_cast<std::size_t>(k_), 0);
    for (const Row& r : rows_) pivot[static_cast<std::size_t>(r.pivot)] = 1;
    std::vector<int> out;
    for (int j = 0; j < k_; ++j)
      if (!pivot[static_cast<std::size_t>(j)]) out.push_back(j);
    return out;
  }

  /// Completes `weights` (free unknowns already set) from the pivot rows.
  bool solve(std::vector<Weight>& weights) const {
    for (const Row& r : rows_) {
      Rational v = r.rhs;
      for (int j = 0; j < k_; ++j)
        if (j != r.pivot && !r.coef[static_cast<std::size_t>(j)].is_zero())
          v = v - r.coef[static_cast<std::size_t>(j)] * Rational(weights[static_cast<std::size_t>(j)]);
      if (!v.is_integer() || v.num() < 1 || v.num() > std::numeric_limits<Weight>::max()) return false;
      weights[static_cast<std::size_t>(r.pivot)] = static_cast<Weight>(v.num());
    }
    return true;
  }

 private:
  struct Row {
    std::vector<Rational> coef;
    Rational rhs;
    int pivot;
  };

  static void subtract(Row& target, const Row& source, const Rational& factor) {
    for (std::size_t j = 0; j < target.coef.size(); ++j)
      if (!source.coef[j].is_zero()) target.coef[j] = target.coef[j] - factor * source.coef[j];
    target.rhs = target.rhs - factor * source.rhs;
  }

  // Every other unknown is at least 1, so a row whose free coefficients are
  // all non-negative caps its pivot at rhs - sum(coef).
  bool plausible() const {
    for (const Row& r : rows_) {
      Rational bound = r.rhs;
      bool all_non_negative = true;
      for (int j = 0; j < k_; ++j) {
        if (j == r.pivot) continue;
        const Rational& c = r.coef[static_cast<std::size_t>(j)];
        if (c.sign() < 0) all_non_negative = false;
        if (!c.is_zero()) bound = bound - c;
      }
      if (all_non_negative && bound < Rational(1)) return false;
    }
    return true;
  }

  int k_;
  std::vector<Row> rows_;
};

struct BudgetHit {};

// Routes k paths through the graph vertex by vertex in topological order.
// At each vertex the paths present are split over its out-edges; paths
// whose routes coincide so far are interchangeable, so only how many of them
// take each edge matters.
class RoutingSearch {
 public:
  RoutingSearch(const FlowNetwork& net, int k, std::int64_t& nodes, std::int64_t budget)
      : net_(net), g_(net.graph()), k_(k), nodes_(nodes), budget_(budget),
        routes_(static_cast<std::size_t>(k)), at_(static_cast<std::size_t>(k), g_.source()) {
    for (Vertex v : g_.topological_order())
      if (v != g_.sink()) order_.push_back(v);
  }

  std::optional<Decomposition> run() {
    WeightSystem system(k_);
    if (visit(0, system)) return found_;
    return std::nullopt;
  }

 private:
  bool visit(std::size_t step, const WeightSystem& system) {
    if (++nodes_ > budget_) throw BudgetHit{};
    if (step == order_.size()) return finish(system);
    const Vertex v = order_[step];
    std::vector<int> here;
    for (int i = 0; i < k_; ++i)
      if (at_[static_cast<std::size_t>(i)] == v) here.push_back(i);
    auto outs = g_.out_edges(v);
    if (here.size() < outs.size()) return false;

    // Classes of identical routes, in order of their smallest member.
    std::vector<std::vector<int>> classes;
    for (int i : here) {
      bool placed = false;
      for (auto& c : classes)
        if (routes_[static_cast<std::size_t>(c.front())] == routes_[static_cast<std::size_t>(i)]) {
          c.push_back(i);
          placed = true;
          break;
        }
      if (!placed) classes.push_back({i});
    }
    std::vector<std::vector<int>> counts(classes.size(), std::vector<int>(outs.size(), 0));
    std::vector<int> totals(outs.size(), 0);
    return distribute(step, system, classes, counts, totals, 0, 0, static_cast<int>(classes.empty() ? 0 : classes[0].size()));
  }

  bool distribute(std::size_t step, const WeightSystem& system, const std::vector<std::vector<int>>& classes,
                  std::vector<std::vector<int>>& counts, std::vector<int>& totals, std::size_t cls, std::size_t edge,
                  int left) {
    if (++nodes_ > budget_) throw BudgetHit{};
    auto outs = g_.out_edges(order_[step]);
    if (cls == classes.size()) return apply(step, system, classes, counts, totals);
    // Every out-edge still unused needs one of the paths not yet placed.
    int unplaced = left, uncovered = 0;
    for (std::size_t c = cls + 1; c < classes.size(); ++c) unplaced += static_cast<int>(classes[c].size());
    for (int t : totals) uncovered += t == 0;
    if (uncovered > unplaced) return false;
    if (edge + 1 == outs.size()) {
      // The last edge takes whatever remains of the class.
      const Weight cap = net_.flow(outs[edge]);
      if (totals[edge] + left > cap) return false;
      counts[cls][edge] = left;
      totals[edge] += left;
      bool ok = false;
      if (cls + 1 == classes.size()) {
        ok = apply(step, system, classes, counts, totals);
      } else {
        ok = distribute(step, system, classes, counts, totals, cls + 1, 0, static_cast<int>(classes[cls + 1].size()));
      }
      totals[edge] -= left;
      counts[cls][edge] = 0;
      return ok;
    }
    for (int take = left; take >= 0; --take) {
      if (totals[edge] + take > net_.flow(outs[edge])) continue;
      counts[cls][edge] = take;
      totals[edge] += take;
      bool ok = distribute(step, system, classes, counts, totals, cls, edge + 1, left - take);
      totals[edge] -= take;
      counts[cls][edge] = 0;
      if (ok) return true;
    }
    return false;
  }

  bool apply(std::size_t step, const WeightSystem& system, const std::vector<std::vector<int>>& classes,
             const std::vector<std::vector<int>>& counts, const std::vector<int>& totals) {
    auto outs = g_.out_edges(order_[step]);
    for (int t : totals)
      if (t == 0) return false;
    std::vector<std::vector<int>> members(outs.size());
    for (std::size_t c = 0; c < classes.size(); ++c) {
      std::size_t next = 0;
      for (std::size_t q = 0; q < outs.size(); ++q)
        for (int r = 0; r < counts[c][q]; ++r) members[q].push_back(classes[c][next++]);
    }
    WeightSystem extended = system;
    for (std::size_t q = 0; q < outs.size(); ++q) {
      std::sort(members[q].begin(), members[q].end());
      if (!extended.add(members[q], net_.flow(outs[q]))) return false;
    }
    for (std::size_t q = 0; q < outs.size(); ++q)
      for (int i : members[q]) {
        routes_[static_cast<std::size_t>(i)].push_back(outs[q]);
        at_[static_cast<std::size_t>(i)] = g_.edge(outs[q]).head;
      }
    bool ok = visit(step + 1, extended);
    for (std::size_t q = 0; q < outs.size(); ++q)
      for (int i : members[q]) {
        routes_[static_cast<std::size_t>(i)].pop_back();
        at_[static_cast<std::size_t>(i)] = order_[step];
      }
    return ok;
  }

  bool finish(const WeightSystem& system) {
    // Two identical routes could be merged into one path, so a minimum
    // decomposition never has them and levels below k were already refuted.
    for (int i = 0; i < k_; ++i)
      for (int j = i + 1; j < k_; ++j)
        if (routes_[static_cast<std::size_t>(i)] == routes_[static_cast<std::size_t>(j)]) return false;
    std::vector<Weight> weights(static_cast<std::size_t>(k_), 0);
    std::vector<int> free = system.free_unknowns();
    std::vector<Weight> upper(static_cast<std::size_t>(k_), 0);
    for (int i = 0; i < k_; ++i) {
      Weight cap = std::numeric_limits<Weight>::max();
      for (EdgeId e : routes_[static_cast<std::size_t>(i)]) cap = std::min(cap, net_.flow(e));
      upper[static_cast<std::size_t>(i)] = cap;
    }
    if (!assign_free(system, free, 0, weights, upper)) return false;
    Decomposition d;
    d.algorithm = Algorithm::Exact;
    for (int i = 0; i < k_; ++i) d.paths.push_back({routes_[static_cast<std::size_t>(i)], weights[static_cast<std::size_t>(i)], -1});
    found_ = std::move(d);
    return true;
  }

  bool assign_free(const WeightSystem& system, const std::vector<int>& free, std::size_t pos, std::vector<Weight>& weights,
                   const std::vector<Weight>& upper) {
    if (pos == free.size()) return system.solve(weights);
    const auto var = static_cast<std::size_t>(free[pos]);
    for (Weight w = 1; w <= upper[var]; ++w) {
      if (++nodes_ > budget_) throw BudgetHit{};
      weights[var] = w;
      if (assign_free(system, free, pos + 1, weights, upper)) return true;
    }
    return false;
  }

  const FlowNetwork& net_;
  const MultiDag& g_;
  int k_;
  std::int64_t& nodes_;
  std::int64_t budget_;
  std::vector<Vertex> order_;
  std::vector<std::vector<EdgeId>> routes_;
  std::vector<Vertex> at_;
  Decomposition found_;
};

}  // namespace detail

/// Minimum flow decomposition by iterative deepening on the number of paths,
/// starting from the flow-width lower bound. The search runs on the
/// Y-to-V contracted flow subgraph. When the node budget runs out, the best
/// of the greedy and parity-fixing decompositions is returned with
/// `optimal == false`.
inline ExactResult exact_mfd(const FlowNetwork& net, const ExactLimits& limits = {}) {
  if (net.value() == 0) throw Error(Errc::EmptyFlow, "flow value is zero");
  ExactResult out;
  out.lower_bound = mfd_lower_bound(net);

  Decomposition best = greedy_decompose(net);
  Decomposition pf = parity_fix_decompose(net).decomposition;
  if (pf.size() < best.size()) best = std::move(pf);

  Subnetwork sub = flow_subgraph(net);
  Contraction con = yv_contract(sub.network);
  const auto upper = static_cast<Weight>(best.size());
  try {
    for (Weight k = out.lower_bound; k < upper; ++k) {
      detail::RoutingSearch search(con.network, static_cast<int>(k), out.nodes, limits.node_budget);
      if (auto found = search.run()) {
        out.decomposition = expand_decomposition(*found, con.chains, sub.parent_edge);
        out.decomposition.algorithm = Algorithm::Exact;
        out.optimal = true;
        return out;
      }
    }
  } catch (const detail::BudgetHit&) {
    out.decomposition = std::move(best);
    out.decomposition.algorithm = Algorithm::Exact;
    out.optimal = false;
    return out;
  }
  out.decomposition = std::move(best);
  for (auto& p : out.decomposition.paths) p.iteration = -1;
  out.decomposition.algorithm = Algorithm::Exact;
  out.optimal = true;
  return out;
}

}  // namespace flowdec
