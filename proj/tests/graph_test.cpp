#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "i2pr/graph.hpp"
#include "i2pr/graph_io.hpp"
#include "i2pr/metrics.hpp"
#include "oracles.hpp"

namespace i2pr {
namespace {

TEST(DirectedGraph, RejectsLoopsParallelEdgesAndBadLabels) {
  EXPECT_THROW(DirectedGraph({"a", "b"}, std::vector<Edge>{{0, 0}}), InvalidArgumentError);
  EXPECT_THROW(DirectedGraph({"a", "b"}, std::vector<Edge>{{0, 1}, {0, 1}}), InvalidArgumentError);
  EXPECT_THROW(DirectedGraph({"b", "a"}, std::vector<Edge>{}), InvalidArgumentError);
  EXPECT_THROW(DirectedGraph({"a", "a"}, std::vector<Edge>{}), InvalidArgumentError);
  EXPECT_THROW(DirectedGraph({""}, std::vector<Edge>{}), InvalidArgumentError);
  EXPECT_THROW(DirectedGraph({" a"}, std::vector<Edge>{}), InvalidArgumentError);
  EXPECT_THROW(DirectedGraph({"a"}, std::vector<Edge>{{0, 3}}), InvalidArgumentError);
}

TEST(DirectedGraph, IdsFollowLabelOrder) {
  const auto g = oracle::from_pairs({"z", "23.137.254.xxx", "a"}, {{"z", "a"}, {"a", "23.137.254.xxx"}});
  ASSERT_EQ(g.node_count(), 3u);
  EXPECT_EQ(g.label(0), "23.137.254.xxx");
  EXPECT_EQ(g.label(1), "a");
  EXPECT_EQ(g.label(2), "z");
  EXPECT_EQ(g.id_of("z"), 2u);
  EXPECT_FALSE(g.find("q").has_value());
  EXPECT_TRUE(g.has_edge(2, 1));
  EXPECT_FALSE(g.has_edge(1, 2));
  EXPECT_EQ(g.in_degree(0), 1u);
  EXPECT_EQ(g.out_degree(1), 1u);
}

TEST(RemoveNode, IsolatedNode) {
  // 5 nodes, 4 edges, "e" isolated
  const auto g = oracle::from_pairs({"a", "b", "c", "d", "e"},
                                    {{"a", "b"}, {"b", "c"}, {"c", "d"}, {"d", "a"}});
  const auto r = g.remove_node("e");
  EXPECT_EQ(r.graph.node_count(), 4u);
  EXPECT_EQ(r.graph.edge_count(), 4u);
  EXPECT_EQ(r.removed_in, 0u);
  EXPECT_EQ(r.removed_out, 0u);
}

TEST(RemoveNode, StarHubLeavesNoEdges) {
  std::vector<std::string> labels{"hub"};
  std::vector<LabelEdge> spokes;
  for (int i = 0; i < 6; ++i) {
    labels.push_back("leaf" + std::to_string(i));
    spokes.emplace_back("hub", labels.back());
  }
  const auto g = oracle::bidirected(labels, spokes);
  const auto r = g.remove_node("hub");
  EXPECT_EQ(r.graph.node_count(), 6u);
  EXPECT_EQ(r.graph.edge_count(), 0u);
  EXPECT_EQ(r.removed_in, 6u);
  EXPECT_EQ(r.removed_out, 6u);
}

TEST(RemoveNode, LeavesOriginalUntouched) {
  const auto g = oracle::random_digraph(30, 0.2, 11);
  const auto before = g;
  const auto r = g.remove_node(g.label(3));
  EXPECT_EQ(g, before);
  EXPECT_FALSE(r.graph.contains(g.label(3)));
  EXPECT_THROW(g.remove_node("missing"), UnknownNodeError);
}

TEST(RemoveNode, PropertyEdgeBookkeepingAndDensityClosedForm) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto n = 3 + seed % 25;
    const auto g = oracle::random_digraph(n, 0.05 + 0.01 * static_cast<double>(seed % 40), seed);
    const auto victim = static_cast<NodeId>(seed % n);
    const auto d_total = g.degree(victim);
    const auto r = g.remove_node(g.label(victim));
    ASSERT_EQ(r.graph.node_count(), n - 1);
    ASSERT_EQ(r.graph.edge_count(), g.edge_count() - d_total);
    ASSERT_EQ(r.removed_in, g.in_degree(victim));
    ASSERT_EQ(r.removed_out, g.out_degree(victim));
    const double closed = static_cast<double>(g.edge_count() - d_total) /
                          (static_cast<double>(n - 1) * static_cast<double>(n - 2));
    ASSERT_DOUBLE_EQ(density(r.graph), closed);
    // surviving edges are exactly the original ones not touching the victim
    std::set<LabelEdge> expected, got;
    for (const auto& [u, v] : g.edges())
      if (u != victim && v != victim) expected.emplace(g.label(u), g.label(v));
    for (const auto& [u, v] : r.graph.edges()) got.emplace(r.graph.label(u), r.graph.label(v));
    ASSERT_EQ(got, expected);
  }
}

TEST(RemoveNode, ReAddRestoresCountButNotEdges) {
  const auto g = oracle::random_digraph(20, 0.3, 5);
  const std::string victim = g.label(7);
  const auto r = g.remove_node(victim);
  const auto back = r.graph.with_node(victim);
  EXPECT_EQ(back.node_count(), g.node_count());
  EXPECT_EQ(back.edge_count(), r.graph.edge_count());
  EXPECT_EQ(back.degree(back.id_of(victim)), 0u);
  EXPECT_THROW(back.with_node(victim), InvalidArgumentError);
}

TEST(UndirectedSkeleton, MergesReciprocalArcs) {
  const auto g = oracle::from_pairs({"a", "b", "c"}, {{"a", "b"}, {"b", "a"}, {"c", "a"}});
  const auto adj = g.undirected_adjacency();
  EXPECT_EQ(adj[0], (std::vector<NodeId>{1, 2}));
  EXPECT_EQ(adj[1], (std::vector<NodeId>{0}));
  EXPECT_EQ(adj[2], (std::vector<NodeId>{0}));
}

TEST(GraphJson, SortedByteStableOutput) {
  const auto g = oracle::from_pairs({"b", "a", "c"}, {{"c", "a"}, {"a", "c"}, {"a", "b"}});
  EXPECT_EQ(write_graph_json(g), R"({"nodes":["a","b","c"],"edges":[["a","b"],["a","c"],["c","a"]]})" "\n");
}

TEST(GraphJson, RoundTripPreservesGraph) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto g = oracle::random_digraph(40, 0.1, seed);
    const auto text = write_graph_json(g);
    const auto back = parse_graph_json(text);
    EXPECT_EQ(back, g);
    EXPECT_EQ(write_graph_json(back), text);
  }
}

TEST(GraphJson, RejectsMalformedDocuments) {
  EXPECT_THROW(parse_graph_json("{not json"), ParseError);
  EXPECT_THROW(parse_graph_json(R"({"nodes":["a"]})"), ParseError);
  EXPECT_THROW(parse_graph_json(R"({"nodes":["a"],"edges":[["a","b"]]})"), ParseError);
  EXPECT_THROW(parse_graph_json(R"({"nodes":["a","b"],"edges":[["a","b"],["a","b"]]})"), ParseError);
  EXPECT_THROW(parse_graph_json(R"({"nodes":["a"],"edges":[["a","a"]]})"), ParseError);
  EXPECT_THROW(parse_graph_json(R"({"nodes":["a","a"],"edges":[]})"), ParseError);
  EXPECT_THROW(parse_graph_json(R"({"nodes":[1],"edges":[]})"), ParseError);
  std::istringstream in(R"({"nodes":[],"edges":[]})");
  EXPECT_EQ(read_graph_json(in).node_count(), 0u);
}

}  // namespace
}  // namespace i2pr
