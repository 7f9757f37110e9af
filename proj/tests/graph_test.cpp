#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "test_support.hpp"
#include "zmod/generators.hpp"
#include "zmod/graph.hpp"
#include "zmod/partition.hpp"

namespace zmod {
namespace {

using Edges = std::vector<std::pair<std::string, std::string>>;

std::size_t degree_total(const Graph& g) {
  std::size_t total = 0;
  for (Vertex v = 0; v < g.vertex_count(); ++v) total += g.degree(v);
  return total;
}

bool symmetric(const Graph& g) {
  for (Vertex u = 0; u < g.vertex_count(); ++u)
    for (Vertex v : g.neighbors(u))
      if (u == v || !g.has_edge(v, u)) return false;
  return true;
}

TEST(BuildGraph, Triangle) {
  const Edges edges{{"a", "b"}, {"b", "c"}, {"c", "a"}};
  const Graph g = build_graph(edges);
  EXPECT_EQ(g.vertex_count(), 3u);
  EXPECT_EQ(g.edge_count(), 3u);
  for (Vertex v = 0; v < 3; ++v) EXPECT_EQ(g.degree(v), 2u);
  EXPECT_EQ(g.label(0), "a");
  EXPECT_EQ(g.index_of("c"), 2u);
  EXPECT_EQ(g.index_of("zz"), 3u);
}

TEST(BuildGraph, CollapsesDuplicates) {
  const Edges edges{{"a", "b"}, {"b", "a"}, {"a", "b"}};
  BuildReport report;
  const Graph g = build_graph(edges, &report);
  EXPECT_EQ(g.vertex_count(), 2u);
  EXPECT_EQ(g.edge_count(), 1u);
  EXPECT_EQ(report.duplicates_collapsed, 2u);
}

TEST(BuildGraph, RingOfCliquesEdgeList) {
  const Graph ring = ring_of_cliques(5, 20).graph;
  Edges edges;
  for (auto [u, v] : ring.edges()) edges.emplace_back(ring.label(u), ring.label(v));
  const Graph g = build_graph(edges);
  EXPECT_EQ(g.vertex_count(), 100u);
  EXPECT_EQ(g.edge_count(), 220u);
}

TEST(BuildGraph, RejectsSelfLoop) {
  const Edges edges{{"a", "b"}, {"c", "c"}};
  try {
    build_graph(edges);
    FAIL() << "self-loop accepted";
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("'c'"), std::string::npos);
  }
}

TEST(BuildGraph, RejectsEmpty) {
  EXPECT_THROW(build_graph(Edges{}), InputError);
  EXPECT_THROW(load_edge_list("# nothing here\n\n"), InputError);
}

TEST(BuildGraph, OrderInsensitive) {
  const Graph base = ring_of_cliques(4, 6).graph;
  Edges edges;
  for (auto [u, v] : base.edges()) edges.emplace_back(base.label(u), base.label(v));
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    std::shuffle(edges.begin(), edges.end(), rng);
    for (auto& e : edges)
      if (rng() & 1) std::swap(e.first, e.second);
    const Graph g = build_graph(edges);
    ASSERT_EQ(g.vertex_count(), base.vertex_count());
    ASSERT_EQ(g.edge_count(), base.edge_count());
    for (auto [u, v] : base.edges())
      ASSERT_TRUE(g.has_edge(g.index_of(base.label(u)), g.index_of(base.label(v))));
  }
}

TEST(BuildGraph, HandshakeAndSymmetryOnRandomGraphs) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Graph g = testing::random_graph(5 + seed * 3, 0.2, seed);
    EXPECT_EQ(degree_total(g), 2 * g.edge_count());
    EXPECT_TRUE(symmetric(g));
    std::set<std::string> labels(g.labels().begin(), g.labels().end());
    EXPECT_EQ(labels.size(), g.vertex_count());
    for (Vertex v = 0; v < g.vertex_count(); ++v) EXPECT_EQ(g.index_of(g.label(v)), v);
  }
}

TEST(LoadEdgeList, Path) {
  const Graph g = load_edge_list("1 2\n2 3\n");
  EXPECT_EQ(g.vertex_count(), 3u);
  EXPECT_EQ(g.edge_count(), 2u);
}

TEST(LoadEdgeList, SkipsCommentsAndBlanks) {
  const Graph g = load_edge_list("# c\na b\n\nb c\nc a\n");
  EXPECT_EQ(g.vertex_count(), 3u);
  EXPECT_EQ(g.edge_count(), 3u);
}

TEST(LoadEdgeList, TabsAndCrlf) {
  const Graph g = load_edge_list("a\tb\r\n  b   c \r\n");
  EXPECT_EQ(g.edge_count(), 2u);
}

TEST(LoadEdgeList, ReportsMalformedLine) {
  try {
    load_edge_list("1 2 3\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 1u);
  }
  try {
    load_edge_list("# header\n1 2\n3\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST(SingletonPartition, OneCommunityPerVertex) {
  EXPECT_EQ(singleton_partition(load_edge_list("a b\nb c\nc a\n")).count(), 3u);
  EXPECT_EQ(singleton_partition(load_edge_list("a b\n")).count(), 2u);
  const Partition p = singleton_partition(ring_of_cliques(5, 20).graph);
  EXPECT_EQ(p.count(), 100u);
  for (Vertex v = 0; v < 100; ++v) EXPECT_EQ(p.community_of(v), v);
}

TEST(PartitionFile, Loads) {
  const Graph g = load_edge_list("a b\nb c\nc a\n");
  const Partition p = load_partition("a 0\nb 0\nc 1\n", g);
  EXPECT_EQ(p.count(), 2u);
  EXPECT_EQ(p.community_of(0), p.community_of(1));
  EXPECT_NE(p.community_of(0), p.community_of(2));
}

TEST(PartitionFile, RenumbersDensely) {
  const Graph g = load_edge_list("a b\nb c\nc a\n");
  const Partition p = load_partition("a 5\nb 9\nc 5\n", g);
  EXPECT_EQ(p.count(), 2u);
  EXPECT_EQ(p.assignment(), (std::vector<Community>{0, 1, 0}));
}

TEST(PartitionFile, Errors) {
  const Graph g = load_edge_list("a b\nb c\nc a\n");
  try {
    load_partition("a 0\nb 0\n", g);
    FAIL();
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("uncovered vertex"), std::string::npos);
  }
  EXPECT_THROW(load_partition("a 0\nb 0\nc 1\na 1\n", g), ParseError);
  EXPECT_THROW(load_partition("a 0\nb 0\nc 1\nd 1\n", g), ParseError);
  EXPECT_THROW(load_partition("a 0 1\nb 0\nc 1\n", g), ParseError);
}

TEST(PartitionFile, RoundTripPreservesMembership) {
  Rng rng(3);
  for (int trial = 0; trial < 25; ++trial) {
    const Graph g = testing::random_graph(40, 0.1, 100 + trial);
    const Partition p = testing::random_partition(g.vertex_count(), 8, rng);
    const Partition back = load_partition(save_partition(g, p), g);
    EXPECT_TRUE(back.valid());
    EXPECT_TRUE(back.equivalent(p));
  }
}

TEST(Partition, MovesKeepIdsDense) {
  Partition p = Partition::from_labels(std::vector<std::size_t>{0, 0, 1, 2, 2});
  EXPECT_EQ(p.move(2, 0), 1u);  // community 1 emptied, former 2 takes its id
  EXPECT_EQ(p.count(), 2u);
  EXPECT_EQ(p.community_of(3), 1u);
  EXPECT_TRUE(p.valid());
  EXPECT_EQ(p.move(0, p.count()), npos);
  EXPECT_EQ(p.count(), 3u);
  EXPECT_TRUE(p.valid());
  EXPECT_EQ(p.move(1, 0), npos);  // own community
  EXPECT_EQ(p.move(0, 1), 2u);    // the last community empties, nothing is relabeled
  EXPECT_EQ(p.count(), 2u);
  EXPECT_TRUE(p.valid());
}

TEST(Partition, RandomMoveSequencesStayValid) {
  Rng rng(17);
  Partition p = Partition::singletons(30);
  for (int i = 0; i < 5000; ++i) {
    const Vertex v = uniform_index(rng, 30);
    p.move(v, uniform_index(rng, p.count() + 1));
    ASSERT_TRUE(p.valid());
  }
}

}  // namespace
}  // namespace zmod
