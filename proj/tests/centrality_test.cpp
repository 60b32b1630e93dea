#include <cmath>

#include <gtest/gtest.h>

#include "i2pr/centrality.hpp"
#include "i2pr/synthgen.hpp"
#include "oracles.hpp"

namespace i2pr {
namespace {

DirectedGraph path_abc() { return oracle::from_pairs({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}}); }

TEST(Degree, CountsByDirection) {
  const auto g = oracle::random_digraph(60, 0.1, 3);
  const auto in = centrality_scores(g, Measure::kInDegree);
  const auto out = centrality_scores(g, Measure::kOutDegree);
  const auto total = centrality_scores(g, Measure::kTotalDegree);
  double sum_in = 0, sum_out = 0;
  for (std::size_t i = 0; i < g.node_count(); ++i) {
    sum_in += in.values()[i];
    sum_out += out.values()[i];
    ASSERT_EQ(total.values()[i], in.values()[i] + out.values()[i]);
  }
  EXPECT_EQ(sum_in, static_cast<double>(g.edge_count()));
  EXPECT_EQ(sum_out, static_cast<double>(g.edge_count()));
}

TEST(Degree, EquivariantUnderRelabeling) {
  const auto g = oracle::random_digraph(40, 0.1, 8);
  // reverse the label order: new label of node i is "r" + (999 - i)
  auto relabel = [](const std::string& s) { return "r" + std::to_string(99999 - std::stoi(s.substr(1))); };
  std::vector<std::string> labels;
  for (const auto& l : g.labels()) labels.push_back(relabel(l));
  std::vector<LabelEdge> edges;
  for (const auto& [u, v] : g.edges()) edges.emplace_back(relabel(g.label(u)), relabel(g.label(v)));
  const auto h = DirectedGraph::from_labels(labels, edges);
  for (auto m : {Measure::kInDegree, Measure::kOutDegree, Measure::kTotalDegree}) {
    const auto a = centrality_scores(g, m);
    const auto b = centrality_scores(h, m);
    for (const auto& l : g.labels()) ASSERT_EQ(a.at(l), b.at(relabel(l)));
  }
}

TEST(Betweenness, PathMiddleNode) {
  const auto s = centrality_scores(path_abc(), Measure::kBetweenness);
  EXPECT_EQ(s.at("a"), 0.0);
  EXPECT_EQ(s.at("b"), 1.0);
  EXPECT_EQ(s.at("c"), 0.0);
}

TEST(Betweenness, EvenSplitAcrossEqualPaths) {
  // s -> {x, y} -> t: two shortest paths, each interior node carries half
  const auto g = oracle::from_pairs({"s", "t", "x", "y"}, {{"s", "x"}, {"s", "y"}, {"x", "t"}, {"y", "t"}});
  const auto s = centrality_scores(g, Measure::kBetweenness);
  EXPECT_DOUBLE_EQ(s.at("x"), 0.5);
  EXPECT_DOUBLE_EQ(s.at("y"), 0.5);
}

TEST(Betweenness, MatchesShortestPathEnumeration) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto g = oracle::random_digraph(12, 0.1 + 0.02 * static_cast<double>(seed), seed);
    const auto expected = oracle::betweenness_enumeration(g);
    const auto got = betweenness_values(g);
    long double total_expected = 0, total_got = 0;
    for (std::size_t v = 0; v < g.node_count(); ++v) {
      ASSERT_NEAR(got[v], static_cast<double>(expected[v]), 1e-9) << "seed " << seed << " node " << v;
      total_expected += expected[v];
      total_got += got[v];
    }
    ASSERT_NEAR(static_cast<double>(total_got), static_cast<double>(total_expected), 1e-9);
  }
}

TEST(Closeness, HarmonicOutCloseness) {
  const auto s = centrality_scores(path_abc(), Measure::kCloseness);
  EXPECT_DOUBLE_EQ(s.at("a"), 0.75);
  EXPECT_DOUBLE_EQ(s.at("b"), 0.5);
  EXPECT_DOUBLE_EQ(s.at("c"), 0.0);
}

TEST(Closeness, MatchesFloydWarshall) {
  const auto g = oracle::random_digraph(30, 0.07, 17);
  const auto d = oracle::floyd_warshall(g);
  const auto got = closeness_values(g);
  for (NodeId u = 0; u < g.node_count(); ++u) {
    double sum = 0;
    for (NodeId v = 0; v < g.node_count(); ++v)
      if (u != v && d[u][v] < oracle::kInf) sum += 1.0 / static_cast<double>(d[u][v]);
    ASSERT_NEAR(got[u], sum / 29.0, 1e-12);
  }
}

TEST(Eigenvector, SymmetricGraphsAreUniform) {
  const auto k4 = oracle::bidirected({"a", "b", "c", "d"},
                                     {{"a", "b"}, {"a", "c"}, {"a", "d"}, {"b", "c"}, {"b", "d"}, {"c", "d"}});
  const auto k4_scores = centrality_scores(k4, Measure::kEigenvector);
  for (double x : k4_scores.values()) EXPECT_DOUBLE_EQ(x, 1.0);
  // a directed cycle is periodic; the shifted iteration still settles
  const auto cycle = oracle::from_pairs({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}, {"c", "a"}});
  const auto cycle_scores = centrality_scores(cycle, Measure::kEigenvector);
  for (double x : cycle_scores.values()) EXPECT_NEAR(x, 1.0, 1e-12);
}

TEST(Eigenvector, FixedPointOfInEdgeAggregation) {
  const auto g = oracle::random_digraph(40, 0.15, 23);
  const auto x = eigenvector_values(g);
  // x_v * lambda = sum_{u->v} x_u for a single lambda
  double lambda = 0;
  NodeId top = 0;
  for (NodeId v = 0; v < g.node_count(); ++v)
    if (x[v] == 1.0) top = v;
  for (NodeId u : g.in_neighbors(top)) lambda += x[u];
  for (NodeId v = 0; v < g.node_count(); ++v) {
    double sum = 0;
    for (NodeId u : g.in_neighbors(v)) sum += x[u];
    ASSERT_NEAR(sum, lambda * x[v], 1e-9);
  }
  EXPECT_DOUBLE_EQ(*std::max_element(x.begin(), x.end()), 1.0);
}

TEST(Eigenvector, RankingIsScaleInvariant) {
  const auto g = oracle::random_digraph(40, 0.15, 31);
  auto x = eigenvector_values(g);
  const auto before = ranking(x, x.size());
  for (auto& v : x) v *= 7.25;
  EXPECT_EQ(ranking(x, x.size()), before);
}

TEST(Eigenvector, ErrorsOnEdgelessAndNonConvergence) {
  EXPECT_THROW(centrality_scores(DirectedGraph({"a", "b"}, std::vector<Edge>{}), Measure::kEigenvector),
               DegenerateGraphError);
  // on a DAG the iteration only creeps towards the sinks
  EigenvectorOptions tight{1e-12, 20};
  EXPECT_THROW(eigenvector_values(path_abc(), tight), ConvergenceError);
  EXPECT_THROW(centrality_scores(DirectedGraph{}, Measure::kTotalDegree), DegenerateGraphError);
}

TEST(TopK, TieBreakIsLexicographic) {
  const CentralityScores s(Measure::kTotalDegree, {"C", "B", "A"}, {1, 5, 5});
  const auto top = top_k(s, 2);
  ASSERT_EQ(top.size(), 2u);
  EXPECT_EQ(top[0], (RankedNode{"A", 5}));
  EXPECT_EQ(top[1], (RankedNode{"B", 5}));
  EXPECT_EQ(top_k(s, 10).size(), 3u);
  EXPECT_THROW(top_k(s, 0), InvalidArgumentError);
}

TEST(TopK, MatchesFullSort) {
  const auto g = oracle::random_digraph(100, 0.05, 100);
  const auto s = centrality_scores(g, Measure::kTotalDegree);
  const auto expected = oracle::full_sort(s.labels(), s.values());
  const auto got = top_k(s, 10);
  for (std::size_t i = 0; i < 10; ++i) {
    ASSERT_EQ(got[i].label, expected[i].first);
    ASSERT_EQ(got[i].score, expected[i].second);
  }
  const auto all = top_k(s, 1000);
  ASSERT_EQ(all.size(), 100u);
  EXPECT_EQ(all, top_k(centrality_scores(g, Measure::kTotalDegree), 1000));
}

TEST(Measure, NamesRoundTrip) {
  for (const auto& [m, name] : kMeasureNames) EXPECT_EQ(parse_measure(name), m);
  EXPECT_THROW(parse_measure("pagerank"), InvalidArgumentError);
}

}  // namespace
}  // namespace i2pr
