#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <sstream>

#include "fixtures.hpp"
#include "signedmeso/error.hpp"
#include "signedmeso/graph.hpp"

using namespace signedmeso;

namespace {

DirectedSignedGraph parse(const std::string& text, EdgeListFormat f = EdgeListFormat::plain) {
  std::istringstream in(text);
  return load_edge_list(in, f);
}

bool connected(const SignedGraph& g) {
  if (g.node_count() == 0) return true;
  std::vector<bool> seen(g.node_count());
  std::queue<NodeId> q;
  q.push(0);
  seen[0] = true;
  std::size_t reached = 1;
  while (!q.empty()) {
    const NodeId u = q.front();
    q.pop();
    for (const Neighbor& n : g.neighbors(u)) {
      if (!seen[n.node]) {
        seen[n.node] = true;
        ++reached;
        q.push(n.node);
      }
    }
  }
  return reached == g.node_count();
}

}  // namespace

TEST(LoadEdgeList, ParsesArcsInOrder) {
  const auto d = parse("0 1 1\n1 0 1\n1 2 -2\n");
  EXPECT_EQ(d.node_count, 3u);
  const std::vector<Arc> want{{0, 1, 1.0}, {1, 0, 1.0}, {1, 2, -2.0}};
  EXPECT_EQ(d.arcs, want);
  EXPECT_EQ(d.dropped_self_loops, 0u);
}

TEST(LoadEdgeList, ZeroWeightIsParseError) {
  try {
    parse("# header\n0 1 0\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(LoadEdgeList, MalformedLinesReportLineNumber) {
  for (const char* text : {"0 1\n", "0 1 x\n", "0 1 1 extra\n"}) {
    EXPECT_THROW(parse(std::string("0 2 1\n") + text), ParseError) << text;
  }
  try {
    parse("0 1 1\n\n1 2\n");
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST(LoadEdgeList, SelfLoopDroppedAndCounted) {
  const auto d = parse("0 0 1\n");
  EXPECT_TRUE(d.arcs.empty());
  EXPECT_EQ(d.dropped_self_loops, 1u);
}

TEST(LoadEdgeList, DuplicateOrderedPairRejected) {
  EXPECT_THROW(parse("0 1 1\n0 1 -1\n"), ValidationError);
  EXPECT_NO_THROW(parse("0 1 1\n1 0 -1\n"));
}

TEST(LoadEdgeList, CsvHeaderCommentsAndLabels) {
  const auto d = parse("source,target,weight\n# note\nalice,bob,1\nbob,carol,-1\n", EdgeListFormat::csv);
  EXPECT_EQ(d.node_count, 3u);
  EXPECT_EQ(d.labels, (std::vector<std::string>{"alice", "bob", "carol"}));
  EXPECT_EQ(d.arcs[1], (Arc{1, 2, -1.0}));
}

TEST(Symmetrize, OppositeSignsGiveNegativeEdge) {
  DirectedSignedGraph d{2, {{0, 1, 2.0}, {1, 0, -1.0}}, {"0", "1"}, 0};
  const SignedGraph g = symmetrize(d);
  ASSERT_EQ(g.edge_count(), 1u);
  EXPECT_EQ(g.edges()[0], (Edge{0, 1, Sign::negative}));
}

TEST(Symmetrize, SingleArcKeepsItsSign) {
  DirectedSignedGraph d{2, {{0, 1, 3.0}}, {"0", "1"}, 0};
  EXPECT_EQ(symmetrize(d).edges()[0], (Edge{0, 1, Sign::positive}));
}

TEST(Symmetrize, SameSignArcs) {
  DirectedSignedGraph d{2, {{0, 1, -1.0}, {1, 0, -4.0}}, {"0", "1"}, 0};
  EXPECT_EQ(symmetrize(d).edges()[0], (Edge{0, 1, Sign::negative}));
}

TEST(Symmetrize, IdempotentOnDirectedLift) {
  const SignedGraph g = fixtures::random_signed(30, 0.3, 0.4, 5);
  DirectedSignedGraph lift{g.node_count(), {}, g.labels(), 0};
  for (const Edge& e : g.edges()) {
    lift.arcs.push_back({e.u, e.v, double(value(e.sign))});
    lift.arcs.push_back({e.v, e.u, double(value(e.sign))});
  }
  const SignedGraph again = symmetrize(lift);
  EXPECT_TRUE(std::equal(g.edges().begin(), g.edges().end(), again.edges().begin(), again.edges().end()));
}

TEST(Symmetrize, OneEdgePerUnorderedPair) {
  const auto d = parse("0 1 1\n1 0 -1\n2 1 1\n3 0 -2\n0 3 -1\n");
  EXPECT_EQ(symmetrize(d).edge_count(), 3u);
}

TEST(UndirectedFromArcs, RejectsRepeatedPair) {
  EXPECT_THROW(undirected_from_arcs(parse("0 1 1\n1 0 1\n")), ValidationError);
  EXPECT_EQ(undirected_from_arcs(parse("0 1 1\n1 2 -1\n")).edge_count(), 2u);
}

TEST(SignedGraph, RejectsInvalidEdges) {
  EXPECT_THROW(SignedGraph(2, {{0, 0, Sign::positive}}), ValidationError);
  EXPECT_THROW(SignedGraph(2, {{0, 2, Sign::positive}}), ValidationError);
  EXPECT_THROW(SignedGraph(3, {{0, 1, Sign::positive}, {1, 0, Sign::negative}}), ValidationError);
}

TEST(SignedGraph, AdjacencyIsSortedAndSymmetric) {
  const SignedGraph g = fixtures::random_signed(40, 0.2, 0.5, 9);
  std::size_t degree_sum = 0;
  for (NodeId u = 0; u < g.node_count(); ++u) {
    const auto nb = g.neighbors(u);
    degree_sum += nb.size();
    for (std::size_t i = 1; i < nb.size(); ++i) EXPECT_LT(nb[i - 1].node, nb[i].node);
    for (const Neighbor& n : nb) EXPECT_EQ(g.sign(n.node, u), n.sign);
  }
  EXPECT_EQ(degree_sum, 2 * g.edge_count());
}

TEST(LargestComponent, PathPlusIsolatedNode) {
  const SignedGraph g(4, {{0, 1, Sign::positive}, {1, 2, Sign::negative}});
  const SignedGraph c = largest_connected_component(g);
  EXPECT_EQ(c.node_count(), 3u);
  EXPECT_EQ(c.labels(), (std::vector<std::string>{"0", "1", "2"}));
}

TEST(LargestComponent, TieGoesToComponentOfSmallestNode) {
  const SignedGraph g(6, {{3, 4, Sign::positive}, {4, 5, Sign::positive}, {3, 5, Sign::positive},
                          {0, 1, Sign::positive}, {1, 2, Sign::negative}, {0, 2, Sign::positive}});
  const SignedGraph c = largest_connected_component(g);
  EXPECT_EQ(c.labels(), (std::vector<std::string>{"0", "1", "2"}));
  EXPECT_EQ(c.sign(1, 2), Sign::negative);
}

TEST(LargestComponent, ConnectedGraphUnchangedAndOutputConnected) {
  const SignedGraph g = fixtures::g2x3();
  const SignedGraph c = largest_connected_component(g);
  EXPECT_TRUE(std::equal(g.edges().begin(), g.edges().end(), c.edges().begin(), c.edges().end()));
  for (std::uint64_t seed = 1; seed < 6; ++seed) {
    EXPECT_TRUE(connected(largest_connected_component(fixtures::random_signed(50, 0.03, 0.3, seed))));
  }
  EXPECT_EQ(largest_connected_component(SignedGraph(0, {})).node_count(), 0u);
}

TEST(DescriptiveStats, CompleteSignedSix) {
  const GraphStats s = descriptive_stats(fixtures::g2x3());
  EXPECT_EQ(s.nodes, 6u);
  EXPECT_EQ(s.edges, 15u);
  EXPECT_EQ(s.positive_edges, 6u);
  EXPECT_EQ(s.negative_edges, 9u);
  EXPECT_DOUBLE_EQ(s.neg_pos_ratio, 1.5);
  EXPECT_DOUBLE_EQ(s.mean_degree, 5.0);
  EXPECT_DOUBLE_EQ(s.density, 1.0);
}

TEST(DescriptiveStats, SingleEdge) {
  const GraphStats s = descriptive_stats(SignedGraph(2, {{0, 1, Sign::positive}}));
  EXPECT_EQ(s.edges, 1u);
  EXPECT_DOUBLE_EQ(s.mean_degree, 1.0);
  EXPECT_DOUBLE_EQ(s.density, 1.0);
}

TEST(DescriptiveStats, NoPositiveEdgesGivesInfiniteRatio) {
  const GraphStats s = descriptive_stats(SignedGraph(3, {{0, 1, Sign::negative}}));
  EXPECT_TRUE(std::isinf(s.neg_pos_ratio));
  EXPECT_DOUBLE_EQ(descriptive_stats(SignedGraph(1, {})).density, 0.0);
}

TEST(DescriptiveStats, DensityConsistentWithMeanDegree) {
  for (std::uint64_t seed = 1; seed < 5; ++seed) {
    const GraphStats s = descriptive_stats(fixtures::random_signed(25, 0.3, 0.5, seed));
    EXPECT_GE(s.density, 0.0);
    EXPECT_LE(s.density, 1.0);
    EXPECT_NEAR(s.mean_degree, s.density * (s.nodes - 1), 1e-12);
  }
}

TEST(WriteEdgeList, RoundTrips) {
  const SignedGraph g = fixtures::random_signed(20, 0.3, 0.5, 3);
  std::stringstream buf;
  write_edge_list(buf, g);
  const SignedGraph back = undirected_from_arcs(load_edge_list(buf));
  ASSERT_EQ(back.edge_count(), g.edge_count());
  for (const Edge& e : back.edges()) {
    const NodeId u = NodeId(std::stoul(back.label(e.u)));
    const NodeId v = NodeId(std::stoul(back.label(e.v)));
    EXPECT_EQ(g.sign(u, v), e.sign);
  }
}
