#include <gtest/gtest.h>

#include "ramify/generators.hpp"
#include "ramify/recognition.hpp"
#include "ramify/reference.hpp"
#include "support.hpp"

using namespace ramify;

TEST(Families, Sizes) {
  EXPECT_EQ(gen_hypercube(3).vertex_count(), 8u);
  EXPECT_EQ(gen_hypercube(3).edge_count(), 12u);
  EXPECT_EQ(gen_grid(3, 3).vertex_count(), 9u);
  EXPECT_EQ(gen_grid(3, 3).edge_count(), 12u);
  EXPECT_TRUE(graphs_isomorphic(gen_cycle(4), Graph(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}})));
  EXPECT_EQ(gen_path(1).edge_count(), 0u);
  EXPECT_THROW(gen_path(0), std::invalid_argument);
  EXPECT_THROW(gen_grid(0, 3), std::invalid_argument);
  EXPECT_THROW(gen_hypercube(0), std::invalid_argument);
  EXPECT_THROW(gen_random_tree(0, 1), std::invalid_argument);
  EXPECT_THROW(gen_cycle(2), std::invalid_argument);
}

TEST(Families, RandomTreesAreTreesAndSeeded) {
  for (std::size_t n = 1; n <= 40; ++n) {
    const Graph t = gen_random_tree(n, n * 7);
    EXPECT_EQ(t.edge_count() + 1, n);
    EXPECT_TRUE(is_connected(t));
    EXPECT_EQ(format_graph(t), format_graph(gen_random_tree(n, n * 7)));
  }
  EXPECT_NE(format_graph(gen_random_tree(30, 1)), format_graph(gen_random_tree(30, 2)));
}

TEST(Simplex, SmallCases) {
  const SimplexGraph k1 = simplex_graph(Graph(1, {}));
  EXPECT_EQ(k1.graph.vertex_count(), 2u);
  EXPECT_EQ(k1.graph.edge_count(), 1u);
  EXPECT_TRUE(graphs_isomorphic(simplex_graph(gen_path(2)).graph, gen_cycle(4)));
  EXPECT_TRUE(graphs_isomorphic(simplex_graph(gen_cycle(3)).graph, gen_hypercube(3)));
  const SimplexGraph k2 = simplex_graph(gen_path(2));
  EXPECT_EQ(k2.simplices, (std::vector<std::vector<Vertex>>{{}, {0}, {1}, {0, 1}}));
}

TEST(Simplex, Cogwheels) {
  const Graph c5 = cogwheel(5);
  EXPECT_EQ(c5.vertex_count(), 11u);
  EXPECT_EQ(c5.edge_count(), 15u);
  EXPECT_EQ(cogwheel(4).vertex_count(), 9u);
  EXPECT_TRUE(recognize(cogwheel(4)).yes());
  EXPECT_FALSE(recognize(cogwheel(7)).yes());
  for (std::size_t k = 2; k <= 5; ++k) {
    EXPECT_TRUE(recognize(cogwheel(2 * k)).yes());
    EXPECT_FALSE(recognize(cogwheel(2 * k + 1)).yes());
  }
  EXPECT_THROW(cogwheel(2), std::invalid_argument);
}

TEST(Simplex, Iterated) {
  const SimplexGraph kp4 = simplex_graph(gen_path(4));
  EXPECT_EQ(kp4.graph.vertex_count(), 8u);
  EXPECT_EQ(kp4.graph.edge_count(), 10u);
  const Graph g = iterated_simplex(gen_path(4));
  EXPECT_EQ(g.vertex_count(), 19u);
  const RecognitionReport r = recognize(g);
  ASSERT_TRUE(r.yes());
  EXPECT_TRUE(links_all_connected(g, *r.links));
  EXPECT_TRUE(is_biconnected(g));
}

// κ(F) is median for every F on at most 5 vertices, connected or not.
TEST(Simplex, AlwaysMedian) {
  for (std::size_t n = 1; n <= 5; ++n) {
    const auto pairs = naive::all_pairs(n);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs.size()); ++mask) {
      const Graph k = simplex_graph(naive::graph_from_mask(n, mask, pairs)).graph;
      ASSERT_TRUE(is_median_graph(k).median);
      ASSERT_TRUE(is_bipartite(k).bipartite());
    }
  }
}

TEST(Expansion, Examples) {
  const Graph edge = peripheral_expansion(Graph(1, {}), {0});
  EXPECT_EQ(edge.vertex_count(), 2u);
  EXPECT_EQ(edge.edge_count(), 1u);

  const Graph domino = peripheral_expansion(gen_cycle(4), {0, 1});
  EXPECT_TRUE(graphs_isomorphic(domino, gen_grid(2, 3)));
  EXPECT_TRUE(is_median_graph(domino).median);

  EXPECT_THROW(peripheral_expansion(gen_cycle(4), {0, 2}), NotConvexError);
  EXPECT_THROW(peripheral_expansion(gen_cycle(6), {0}), NotMedianError);
}

TEST(Expansion, KeepsMedianOnRandomConvexSets) {
  detail::Rng rng(40);
  for (int trial = 0; trial < 200; ++trial) {
    const Graph g = gen_random_tree(2 + rng.below(8), rng.next());
    // Intervals in median graphs are convex.
    const auto u = interval(g, static_cast<Vertex>(rng.below(g.vertex_count())),
                            static_cast<Vertex>(rng.below(g.vertex_count())));
    const Graph x = peripheral_expansion(g, u);
    EXPECT_TRUE(is_median_graph(x).median);
    EXPECT_TRUE(recognize(x).yes() == reference_recognizer(x));
  }
}

TEST(AsymmetricTree, Properties) {
  const Graph t = asymmetric_tree7();
  EXPECT_EQ(t.vertex_count(), 7u);
  EXPECT_EQ(t.edge_count(), 6u);
  EXPECT_TRUE(is_connected(t));
  EXPECT_EQ(automorphism_count(t), 1u);
  EXPECT_TRUE(recognize(t).yes());
}

TEST(Staircase, Shapes) {
  const RectPolygon one = gen_staircase_polygon(1, 5);
  EXPECT_EQ(one.size(), 4u);
  const RectPolygon three = gen_staircase_polygon(3, 7);
  EXPECT_EQ(three.size(), 8u);
  EXPECT_NO_THROW(validate_polygon(three.corners));
  EXPECT_EQ(format_polygon(three), format_polygon(gen_staircase_polygon(3, 7)));
  const Graph big = grid_network(gen_staircase_polygon(200, 1)).network;
  EXPECT_GE(big.edge_count(), 10000u);
  EXPECT_LE(big.edge_count(), 100000u);
}

TEST(RandomPolygon, SimpleAndSeeded) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const RectPolygon p = gen_random_polygon(1 + seed % 25, seed, 4);
    EXPECT_NO_THROW(validate_polygon(p.corners));
    EXPECT_EQ(format_polygon(p), format_polygon(gen_random_polygon(1 + seed % 25, seed, 4)));
  }
}
