#include <gtest/gtest.h>

#include <random>

#include "snawb/metrics/metrics.hpp"
#include "support/fixtures.hpp"
#include "support/oracle.hpp"

namespace snawb::metrics {
namespace {

using Links = std::vector<std::pair<std::size_t, std::size_t>>;

TEST(Betweenness, PathGraph) {
  const auto g = AdjacencyGraph::undirected(3, {{0, 1}, {1, 2}});
  EXPECT_EQ(betweenness(g), (std::vector<double>{0.0, 1.0, 0.0}));
  EXPECT_EQ(betweenness(g, false), (std::vector<double>{0.0, 1.0, 0.0}));
}

TEST(Betweenness, StarCentreIsOne) {
  const auto g = AdjacencyGraph::undirected(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
  const auto b = betweenness(g);
  EXPECT_DOUBLE_EQ(b[0], 1.0);
  for (std::size_t i = 1; i < 5; ++i) EXPECT_DOUBLE_EQ(b[i], 0.0);
  EXPECT_DOUBLE_EQ(betweenness(g, false)[0], 6.0);
}

TEST(Betweenness, SplitsBetweenEqualPaths) {
  // Square 0-1-2-3-0: each pair of opposite nodes has two shortest paths.
  const auto g = AdjacencyGraph::undirected(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  const auto raw = betweenness(g, false);
  for (double v : raw) EXPECT_DOUBLE_EQ(v, 0.5);
}

TEST(Betweenness, DirectedChainUsesOrderedPairs) {
  const auto g = AdjacencyGraph::directed_graph(3, {{0, 1}, {1, 2}});
  EXPECT_DOUBLE_EQ(betweenness(g)[1], 0.5);
}

TEST(Betweenness, TinyGraphsAreZero) {
  EXPECT_EQ(betweenness(AdjacencyGraph::undirected(2, {{0, 1}})), (std::vector<double>{0.0, 0.0}));
  EXPECT_TRUE(betweenness(AdjacencyGraph::undirected(0, {})).empty());
}

TEST(Closeness, HarmonicHandlesDisconnectedGraphs) {
  const auto g = AdjacencyGraph::undirected(4, {{0, 1}, {1, 2}});
  const auto c = harmonic_closeness(g);
  EXPECT_DOUBLE_EQ(c[0], (1.0 + 0.5) / 3.0);
  EXPECT_DOUBLE_EQ(c[1], 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(c[3], 0.0);
}

TEST(Closeness, DirectedUsesOutgoingDistances) {
  const auto g = AdjacencyGraph::directed_graph(3, {{0, 1}, {1, 2}});
  const auto c = harmonic_closeness(g);
  EXPECT_DOUBLE_EQ(c[0], 0.75);
  EXPECT_DOUBLE_EQ(c[1], 0.5);
  EXPECT_DOUBLE_EQ(c[2], 0.0);
}

TEST(Components, WeakComponentsLabelledByLowestMember) {
  const auto g = AdjacencyGraph::directed_graph(6, {{4, 3}, {1, 5}, {0, 1}});
  EXPECT_EQ(component_labels(g), (std::vector<int>{0, 0, 1, 2, 2, 0}));
}

// Exhaustive path enumeration agrees with Brandes and BFS on random graphs.
TEST(Oracle, RandomSmallGraphsAgree) {
  std::mt19937_64 rng(1234);
  for (int trial = 0; trial < 120; ++trial) {
    const std::size_t n = 1 + rng() % 7;
    const bool directed = trial % 2 == 1;
    const double p = 0.2 + 0.1 * static_cast<double>(rng() % 5);
    Links links;
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = directed ? 0 : a + 1; b < n; ++b) {
        if (a != b && static_cast<double>(rng() >> 11) * 0x1.0p-53 < p) links.emplace_back(a, b);
      }
    }
    const auto g = directed ? AdjacencyGraph::directed_graph(n, links) : AdjacencyGraph::undirected(n, links);
    const testing::PathOracle oracle(n, links, directed);
    const auto b = betweenness(g);
    const auto c = harmonic_closeness(g);
    for (std::size_t v = 0; v < n; ++v) {
      EXPECT_NEAR(b[v], oracle.betweenness(v), 1e-9) << "trial " << trial << " node " << v;
      EXPECT_NEAR(c[v], oracle.harmonic_closeness(v), 1e-9) << "trial " << trial << " node " << v;
    }
  }
}

class NodeMetricsTest : public ::testing::Test {
 protected:
  // a<->b (5,4), a->c (5), c->a (1), d->c (3), e isolated.
  net::RawRosterGraph raw{{"a", "b", "c", "d", "e"},
                          {{{"a", "b"}, 5}, {{"b", "a"}, 4}, {{"a", "c"}, 5}, {{"c", "a"}, 1}, {{"d", "c"}, 3}},
                          "q_time",
                          "w1",
                          {1, 2, 3, 4, 5}};
};

TEST_F(NodeMetricsTest, RawGraphCountsNominations) {
  const auto t = node_metrics(raw);
  EXPECT_EQ(t.at("a").degree, 2);
  EXPECT_EQ(t.at("a").in_degree, 2);
  EXPECT_EQ(t.at("a").out_degree, 2);
  EXPECT_EQ(t.at("a").weighted_in_degree, 5);
  EXPECT_EQ(t.at("c").degree, 2);
  EXPECT_EQ(t.at("c").in_degree, 2);
  EXPECT_EQ(t.at("c").weighted_in_degree, 8);
  EXPECT_EQ(t.at("e").degree, 0);
  EXPECT_EQ(t.at("e").component_id, 1);
  EXPECT_EQ(t.at("d").network, "raw:q_time");
}

TEST_F(NodeMetricsTest, DerivedNetworkKeepsRawNominationCounts) {
  auto lib = testing::presets();
  const auto strong = net::derive_network(raw, *lib->find_relationship("strong_friendship"));
  const auto t = node_metrics(strong, raw);
  EXPECT_EQ(t.at("a").network, "strong_friendship");
  EXPECT_EQ(t.at("a").degree, 1);
  EXPECT_EQ(t.at("c").degree, 0);
  EXPECT_EQ(t.at("c").in_degree, 2);
  EXPECT_EQ(t.at("c").weighted_in_degree, 8);
  EXPECT_EQ(t.at("c").component_id, 1);
  EXPECT_EQ(t.at("a").value(MetricKind::degree), MetricValue{std::int64_t{1}});
  EXPECT_EQ(t.at("a").value(MetricKind::closeness), MetricValue{0.25});
}

TEST_F(NodeMetricsTest, NetworkLevelSummaries) {
  const auto r = network_metrics(raw);
  EXPECT_EQ(r.node_count, 5u);
  EXPECT_EQ(r.edge_count, 5u);
  EXPECT_DOUBLE_EQ(r.density, 5.0 / 20.0);
  ASSERT_TRUE(r.reciprocity_rate.has_value());
  EXPECT_DOUBLE_EQ(*r.reciprocity_rate, 4.0 / 5.0);
  EXPECT_EQ(r.component_count, 2u);
  EXPECT_EQ(r.isolate_count, 1u);

  auto lib = testing::presets();
  const auto any = network_metrics(net::derive_network(raw, *lib->find_relationship("mutual_any")));
  EXPECT_EQ(any.network, "mutual_any");
  EXPECT_EQ(any.edge_count, 2u);
  EXPECT_DOUBLE_EQ(any.density, 2.0 / 10.0);
  EXPECT_FALSE(any.reciprocity_rate.has_value());
  EXPECT_EQ(any.component_count, 3u);
  EXPECT_EQ(any.isolate_count, 2u);
}

TEST(NetworkMetrics, EmptyGraphHasZeroDensity) {
  net::RawRosterGraph g({"a"}, {}, "q_time", "w1", {1, 2, 3, 4, 5});
  EXPECT_EQ(network_metrics(g).density, 0.0);
  EXPECT_EQ(reciprocity_rate(g), 0.0);
}

}  // namespace
}  // namespace snawb::metrics
