#include <gtest/gtest.h>

#include "flowdec/flowdec.hpp"

using namespace flowdec;

namespace {

MultiDag diamond() { return MultiDag::build(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}}); }

Errc code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return Errc::ParseError;
}

}  // namespace

TEST(MultiDag, DiamondBasics) {
  MultiDag g = diamond();
  EXPECT_EQ(g.vertex_count(), 4);
  EXPECT_EQ(g.edge_count(), 4);
  EXPECT_EQ(g.source(), 0);
  EXPECT_EQ(g.sink(), 3);
  auto order = g.topological_order();
  EXPECT_EQ(std::vector<Vertex>(order.begin(), order.end()), (std::vector<Vertex>{0, 1, 2, 3}));
  EXPECT_EQ(g.out_degree(0), 2);
  EXPECT_EQ(g.in_degree(3), 2);
  EXPECT_TRUE(g.is_internal(1));
  EXPECT_FALSE(g.is_internal(3));
}

TEST(MultiDag, ParallelEdgesKeepDistinctIds) {
  MultiDag g = MultiDag::build(2, {{0, 1}, {0, 1}, {0, 1}});
  ASSERT_EQ(g.out_edges(0).size(), 3u);
  EXPECT_EQ(g.out_edges(0)[0], 0);
  EXPECT_EQ(g.out_edges(0)[2], 2);
}

TEST(MultiDag, RejectsMalformedGraphs) {
  EXPECT_EQ(code_of([] { MultiDag::build(3, {{0, 1}, {1, 2}, {2, 1}}); }), Errc::CycleDetected);
  EXPECT_EQ(code_of([] { MultiDag::build(2, {{0, 0}}); }), Errc::CycleDetected);
  EXPECT_EQ(code_of([] { MultiDag::build(3, {{0, 2}, {1, 2}}); }), Errc::MultipleSources);
  EXPECT_EQ(code_of([] { MultiDag::build(3, {{0, 1}, {0, 2}}); }), Errc::MultipleSinks);
  EXPECT_EQ(code_of([] { MultiDag::build(2, {{0, 5}}); }), Errc::InvalidVertex);
  EXPECT_EQ(code_of([] { MultiDag::build(2, {}); }), Errc::EmptyGraph);
  // Vertex 2 is isolated: a second source.
  EXPECT_EQ(code_of([] { MultiDag::build(3, {{0, 1}}); }), Errc::MultipleSources);
}

TEST(Flow, ValidateReportsFirstProblem) {
  EXPECT_NO_THROW(validate(diamond(), {2, 1, 2, 1}));
  EXPECT_EQ(code_of([] { validate(diamond(), {2, 1, 1, 1}); }), Errc::ConservationViolated);
  EXPECT_EQ(code_of([] { validate(diamond(), {2, -1, 2, -1}); }), Errc::NegativeFlow);
  EXPECT_EQ(code_of([] { validate(diamond(), {2, 1, 2}); }), Errc::UnknownEdge);
}

TEST(Flow, ValueMaxWeightAndLogFactor) {
  FlowNetwork net = validate(diamond(), {2, 1, 2, 1});
  EXPECT_EQ(net.value(), 3);
  EXPECT_EQ(net.max_weight(), 2);
  EXPECT_EQ(net.log_factor(), 2);
  EXPECT_EQ(validate(MultiDag::build(2, {{0, 1}}), {8}).log_factor(), 4);
  EXPECT_EQ(validate(MultiDag::build(2, {{0, 1}}), {1}).log_factor(), 1);
}

TEST(Graph, ReachabilityWithAvoidance) {
  MultiDag g = diamond();
  EXPECT_TRUE(reachable(g, 0, 3));
  EXPECT_TRUE(reachable(g, 0, 3, 1));
  EXPECT_FALSE(reachable(g, 1, 2));
  MultiDag chain = MultiDag::build(3, {{0, 1}, {1, 2}});
  EXPECT_FALSE(reachable(chain, 0, 2, 1));
}

TEST(Graph, CappedPathCounts) {
  MultiDag g = MultiDag::build(3, {{0, 1}, {0, 1}, {0, 1}, {1, 2}});
  PathCounts pc = capped_path_counts(g, 2);
  EXPECT_EQ(pc.from_source[1], 2);
  EXPECT_EQ(pc.from_source[2], 2);
  EXPECT_EQ(pc.to_sink[1], 1);
  EXPECT_EQ(pc.to_sink[0], 2);
  EXPECT_EQ(capped_path_counts(g, 5).from_source[2], 3);
}

TEST(Graph, FlowSubgraphDropsZeroEdges) {
  // CH_2 with the value-4 flow leaves (u,v) empty.
  FlowNetwork net = validate(make_chk(2), {1, 1, 2, 0, 2, 1, 1});
  Subnetwork sub = flow_subgraph(net);
  EXPECT_EQ(sub.network.graph().edge_count(), 6);
  EXPECT_EQ(sub.parent_edge, (std::vector<EdgeId>{0, 1, 2, 4, 5, 6}));
  EXPECT_EQ(sub.network.value(), 4);
  EXPECT_THROW(flow_subgraph(validate(diamond(), {0, 0, 0, 0})), Error);
}

TEST(Graph, YvContractionOfChain) {
  FlowNetwork net = validate(MultiDag::build(4, {{0, 1}, {1, 2}, {2, 3}}), {5, 5, 5});
  Contraction c = yv_contract(net);
  ASSERT_EQ(c.network.graph().edge_count(), 1);
  EXPECT_EQ(c.chains[0], (std::vector<EdgeId>{0, 1, 2}));
  EXPECT_EQ(c.network.flow(0), 5);
}

TEST(Graph, YvContractionKeepsBranchingStructure) {
  // s -> a -> {b, t}, b -> t: the chain s->a folds away.
  FlowNetwork net = validate(MultiDag::build(4, {{0, 1}, {1, 2}, {1, 3}, {2, 3}}), {3, 1, 2, 1});
  Contraction c = yv_contract(net);
  EXPECT_EQ(c.network.graph().edge_count(), 2);
  std::vector<Weight> flows(c.network.flow().begin(), c.network.flow().end());
  std::sort(flows.begin(), flows.end());
  EXPECT_EQ(flows, (std::vector<Weight>{1, 2}));
  for (std::size_t e = 0; e < c.chains.size(); ++e) EXPECT_EQ(c.chains[e].front(), 0);
}

TEST(Checked, OverflowIsReported) {
  EXPECT_THROW(checked_add(std::numeric_limits<Weight>::max(), 1), Error);
  EXPECT_THROW(checked_mul(std::numeric_limits<Weight>::max() / 2, 3), Error);
  EXPECT_THROW(checked_pow2(63), Error);
  EXPECT_EQ(checked_pow2(10), 1024);
}
