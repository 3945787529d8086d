#include <gtest/gtest.h>

#include "flowdec/flowdec.hpp"
#include "oracles.hpp"

using namespace flowdec;

TEST(ParallelWidth, ReferenceGraphs) {
  for (int c = 1; c <= 6; ++c) EXPECT_EQ(parallel_width(make_pc(c)).value(), c);
  // For k = 1 the cut {(s,v),(u,v),(u,t)} beats the 2k one.
  for (int k = 1; k <= 5; ++k) EXPECT_EQ(parallel_width(make_chk(k)).value(), std::max(2 * k, 3));
}

TEST(ParallelWidth, ChkWitnessIsTheMinimalValueFourFlow) {
  ParallelWidth pw = parallel_width(make_chk(2));
  EXPECT_EQ(pw.witness, (Flow{1, 1, 2, 0, 2, 1, 1}));
  EXPECT_EQ(pw.cut.size(), 4u);
  EXPECT_LE(oracle::max_bottleneck(make_chk(2), pw.witness), 1);
}

TEST(ParallelWidth, WitnessIsAMinimalFlowOfValuePw) {
  for (const MultiDag& g : oracle::mini_corpus(5, 1, 10)) {
    ParallelWidth pw = parallel_width(g);
    ASSERT_TRUE(pw.exact);
    FlowNetwork net = validate(g, pw.witness);
    ASSERT_EQ(net.value(), pw.lower);
    ASSERT_LE(oracle::max_bottleneck(g, pw.witness), 1);
    ASSERT_GE(pw.lower, width(g).value);
  }
}

TEST(ParallelWidth, BudgetGivesBounds) {
  GeneratedInstance inst = gen_adversarial(3, 3);
  ParallelWidth pw = parallel_width(inst.network.graph(), 5);
  EXPECT_FALSE(pw.exact);
  EXPECT_LE(pw.lower, 33);
  EXPECT_GE(pw.lower, width(inst.network.graph()).value);
  EXPECT_EQ(pw.upper, inst.network.graph().edge_count());
  EXPECT_THROW(pw.value(), Error);
}

TEST(PcMinor, AgreesWithParallelWidth) {
  MultiDag g = make_chk(3);
  for (int c = 1; c <= 8; ++c) EXPECT_EQ(has_pc_minor(g, c), c <= 6) << c;
  EXPECT_THROW(has_pc_minor(gen_adversarial(5, 5).network.graph(), 60, 3), Error);
}

TEST(WidthStable, ReferenceGraphs) {
  WidthStability ch2 = is_width_stable(make_chk(2));
  EXPECT_FALSE(ch2.stable);
  ASSERT_TRUE(ch2.witness.has_value());
  EXPECT_EQ(*ch2.witness, (std::pair<Vertex, Vertex>{1, 2}));
  EXPECT_TRUE(is_width_stable(make_chk(1)).stable);
  EXPECT_TRUE(is_width_stable(make_pc(4)).stable);
  EXPECT_TRUE(is_width_stable(gen_genset({1, 2, 3}).network.graph()).stable);
}

TEST(WidthStable, SeriesParallelOutputs) {
  for (std::uint64_t seed = 0; seed < 100; ++seed)
    for (int depth : {0, 2, 4}) ASSERT_TRUE(is_width_stable(gen_series_parallel(depth, seed)).stable) << seed;
}

TEST(WidthStable, SharedCutVertexIsNotAMinor) {
  // s-v and u-t paths exist for (u, v) = (3, 10) but both run through
  // vertex 2, so no funnel with a central path exists.
  MultiDag g = MultiDag::build(11, {{0, 3}, {0, 4}, {4, 3}, {3, 2}, {3, 2}, {0, 2}, {2, 7}, {2, 7}, {7, 8}, {8, 6}, {6, 5},
                                    {5, 1}, {5, 9}, {9, 1}, {5, 1}, {5, 10}, {5, 10}, {10, 1}, {10, 1}});
  EXPECT_TRUE(reachable(g, 0, 10, 3));
  EXPECT_TRUE(reachable(g, 3, 1, 10));
  EXPECT_TRUE(is_width_stable(g).stable);
  // A bypass around vertex 2 creates the minor.
  MultiDag h = MultiDag::build(11, {{0, 3}, {0, 4}, {4, 3}, {3, 2}, {3, 2}, {0, 2}, {2, 7}, {2, 7}, {7, 8}, {8, 6}, {6, 5},
                                    {5, 1}, {5, 9}, {9, 1}, {5, 1}, {5, 10}, {5, 10}, {10, 1}, {10, 1}, {0, 10}});
  EXPECT_FALSE(is_width_stable(h).stable);
}

TEST(WidthStable, MatchesDefinitionOnSmallGraphs) {
  for (const MultiDag& g : oracle::mini_corpus(4, 2, 9))
    ASSERT_EQ(is_width_stable(g).stable, oracle::width_stable_by_definition(g));
}

TEST(WidthStable, FlowWidthEqualsSupportWidth) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    GeneratedInstance inst = generate({Family::SeriesParallel, {3, 50}, seed});
    const FlowNetwork& net = inst.network;
    EXPECT_EQ(flow_width(net).value, width(flow_subgraph(net).network.graph_ptr()).value);
  }
}

TEST(DMinor, OperationsAndPreconditions) {
  MultiDag ch2 = make_chk(2);
  MultiDag del = d_minor_step(ch2, MinorOp::Deletion, 0);
  EXPECT_EQ(del.edge_count(), 6);
  EXPECT_EQ(del.vertex_count(), 4);
  // (s,v): out-degree(s) = 3, in-degree(v) = 2.
  EXPECT_NO_THROW(d_minor_step(ch2, MinorOp::Deletion, 2));
  // (u,t): out-degree(u) = 2, in-degree(t) = 3.
  EXPECT_NO_THROW(d_minor_step(ch2, MinorOp::Deletion, 4));
  MultiDag chain = MultiDag::build(3, {{0, 1}, {1, 2}});
  EXPECT_THROW(d_minor_step(chain, MinorOp::Deletion, 0), Error);

  MultiDag back = d_minor_step(chain, MinorOp::BackwardContraction, 0);
  EXPECT_EQ(back.vertex_count(), 2);
  EXPECT_EQ(back.edge_count(), 1);
  MultiDag fwd = d_minor_step(chain, MinorOp::ForwardContraction, 1);
  EXPECT_EQ(fwd, back);
  EXPECT_THROW(d_minor_step(ch2, MinorOp::BackwardContraction, 0), Error);
  EXPECT_THROW(d_minor_step(ch2, MinorOp::ForwardContraction, 7), Error);
}

TEST(DMinor, ContractingTheLastHop) {
  MultiDag g = MultiDag::build(4, {{0, 1}, {0, 1}, {1, 2}, {1, 2}, {2, 3}});
  MultiDag h = d_minor_step(g, MinorOp::ForwardContraction, 4);
  EXPECT_EQ(h.vertex_count(), 3);
  EXPECT_EQ(parallel_width(h).value(), 2);
}
