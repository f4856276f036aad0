#include <gtest/gtest.h>

#include "ramify/detail/rng.hpp"
#include "ramify/generators.hpp"
#include "ramify/oracle.hpp"
#include "ramify/polygon.hpp"
#include "ramify/reference.hpp"
#include "support.hpp"

using namespace ramify;

namespace {

// Tree with every edge of length L replaced by a path of L unit edges.
// vertex_of(edge, offset) names the subdivision point.
struct Subdivided {
  Graph graph;
  std::vector<std::vector<Vertex>> points;  // per tree edge, offsets 0..L

  Vertex at(const Graph& tree, const DendronPosition& p) const {
    if (p.edge == kNoEdge) return p.vertex;
    (void)tree;
    return points[p.edge][static_cast<std::size_t>(p.offset)];
  }
};

Subdivided subdivide(const Graph& tree) {
  Subdivided s;
  std::vector<Edge> edges;
  auto next = static_cast<Vertex>(tree.vertex_count());
  s.points.resize(tree.edge_count());
  for (EdgeId e = 0; e < tree.edge_count(); ++e) {
    auto& pts = s.points[e];
    pts.push_back(tree.edge(e).u);
    for (Length k = 1; k < tree.length(e); ++k) pts.push_back(next++);
    pts.push_back(tree.edge(e).v);
    for (std::size_t k = 0; k + 1 < pts.size(); ++k) edges.push_back({pts[k], pts[k + 1]});
  }
  s.graph = Graph(next, std::move(edges));
  return s;
}

Graph random_weighted_tree(std::size_t n, detail::Rng& rng, Length max_len) {
  const Graph shape = gen_random_tree(n, rng.next());
  std::vector<Length> w(shape.edge_count());
  for (auto& x : w) x = rng.between(1, max_len);
  return Graph(n, {shape.edges().begin(), shape.edges().end()}, std::move(w));
}

DendronPosition random_position(const Graph& tree, detail::Rng& rng) {
  if (tree.edge_count() == 0 || rng.chance(0.3)) return DendronPosition::at(static_cast<Vertex>(rng.below(tree.vertex_count())));
  const auto e = static_cast<EdgeId>(rng.below(tree.edge_count()));
  return {kNoVertex, e, rng.between(0, tree.length(e))};
}

}  // namespace

TEST(Lca, AgreesWithParentWalk) {
  detail::Rng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const Graph t = random_weighted_tree(1 + rng.below(60), rng, 9);
    const LcaStructure l(t);
    const auto fw = naive::floyd_warshall(t);
    for (Vertex a = 0; a < t.vertex_count(); ++a) {
      for (Vertex b = 0; b < t.vertex_count(); ++b) {
        ASSERT_EQ(l.dist(a, b), fw[a][b]);
        // The LCA is the common ancestor of greatest hop depth.
        Vertex x = a, y = b;
        while (l.hop_depth(x) > l.hop_depth(y)) x = l.parent(x);
        while (l.hop_depth(y) > l.hop_depth(x)) y = l.parent(y);
        while (x != y) {
          x = l.parent(x);
          y = l.parent(y);
        }
        ASSERT_EQ(l.lca(a, b), x);
      }
    }
  }
}

TEST(Oracle, Examples) {
  const TwoTreeEmbedding c4 = embed(gen_cycle(4));
  const DistanceOracle o4(c4);
  EXPECT_EQ(o4.tree(0).size(), 2u);
  EXPECT_EQ(o4.tree(1).size(), 2u);
  EXPECT_EQ(o4.dist(0, 2), 2);

  const DistanceOracle single(embed(Graph(1, {})));
  EXPECT_EQ(single.dist(0, 0), 0);
  EXPECT_EQ(single.median(0, 0, 0), 0u);

  const Graph grid = gen_grid(100, 100);
  const DistanceOracle og = build_oracle(embed(grid));
  EXPECT_EQ(og.dist(0, 9999), 198);
  detail::Rng rng(4);
  for (int i = 0; i < 10; ++i) {
    const auto s = static_cast<Vertex>(rng.below(10000));
    const auto d = bfs_distances(grid, s);
    for (int j = 0; j < 100; ++j) {
      const auto t = static_cast<Vertex>(rng.below(10000));
      ASSERT_EQ(og.dist(s, t), d[t]);
    }
    EXPECT_EQ(og.dist(s, s), 0);
  }
  EXPECT_THROW(og.dist(0, 10000), UnknownVertexError);

  const Graph k4 = cogwheel(4);
  const DistanceOracle ok(embed(k4));
  const auto dh = bfs_distances(k4, 0);
  for (Vertex v = 0; v < k4.vertex_count(); ++v) EXPECT_EQ(ok.dist(0, v), dh[v]);
  EXPECT_EQ(ok.dist(0, 8), 2);  // hub to the clique {2,3}
}

TEST(Oracle, MedianExamples) {
  const Graph grid = gen_grid(3, 3);  // vertex 3r + c
  const DistanceOracle o(embed(grid));
  EXPECT_EQ(o.median(1, 3, 8), 4u);
  EXPECT_EQ(o.median(5, 5, 0), 5u);

  detail::Rng rng(10);
  const Graph tree = gen_random_tree(15, 99);
  const DistanceOracle ot(embed(tree));
  const DistanceMatrix d(tree);
  for (int i = 0; i < 200; ++i) {
    const auto x = static_cast<Vertex>(rng.below(15)), y = static_cast<Vertex>(rng.below(15)),
               z = static_cast<Vertex>(rng.below(15));
    const auto m = medians(d, x, y, z);
    ASSERT_EQ(m.size(), 1u);
    EXPECT_EQ(ot.median(x, y, z), m[0]);
  }
}

TEST(Oracle, ExhaustiveSmallInstances) {
  for (std::size_t n = 1; n <= 6; ++n) {
    naive::for_each_connected_graph(
        n,
        [&](const Graph& g) {
          const RecognitionReport r = recognize(g);
          if (!r.yes()) return;
          const DistanceOracle o(embed(g, r));
          const DistanceMatrix d(g);
          for (Vertex x = 0; x < n; ++x) {
            for (Vertex y = 0; y < n; ++y) {
              ASSERT_EQ(o.dist(x, y), d(x, y));
              for (Vertex z = 0; z < n; ++z) {
                const Vertex m = o.median(x, y, z);
                ASSERT_EQ(medians(d, x, y, z), std::vector<Vertex>{m});
                ASSERT_EQ(o.median(y, z, x), m);
                ASSERT_EQ(o.median(z, y, x), m);
              }
            }
          }
        },
        true);
  }
}

TEST(Oracle, WeightedAgreesWithDijkstra) {
  detail::Rng rng(15);
  for (int trial = 0; trial < 30; ++trial) {
    const Graph g = cartesian_product(random_weighted_tree(2 + rng.below(15), rng, 20),
                                      random_weighted_tree(2 + rng.below(15), rng, 20));
    const DistanceOracle o(embed(g));
    for (int i = 0; i < 5; ++i) {
      const auto s = static_cast<Vertex>(rng.below(g.vertex_count()));
      const auto d = bfs_distances(g, s);
      for (Vertex t = 0; t < g.vertex_count(); ++t) ASSERT_EQ(o.dist(s, t), d[t]);
    }
  }
}

TEST(Oracle, SampledLargeInstance) {
  // About 10^5 vertices: a random 320-vertex tree times a random 313-vertex tree.
  const Graph g = cartesian_product(gen_random_tree(320, 1), gen_random_tree(313, 2));
  ASSERT_GE(g.vertex_count(), 100000u);
  const DistanceOracle o(embed(g));
  detail::Rng rng(17);
  for (int i = 0; i < 100; ++i) {
    const auto s = static_cast<Vertex>(rng.below(g.vertex_count()));
    const auto d = bfs_distances(g, s);
    for (int j = 0; j < 100; ++j) {
      const auto t = static_cast<Vertex>(rng.below(g.vertex_count()));
      ASSERT_EQ(o.dist(s, t), d[t]);
    }
  }
}

TEST(Dendron, Examples) {
  const Graph t(3, {{0, 1}, {1, 2}}, {10, 4});
  const LcaStructure l(t);
  EXPECT_EQ(dendron_dist(l, {kNoVertex, 0, 3}, {kNoVertex, 0, 7}), 4);
  EXPECT_EQ(dendron_dist(l, DendronPosition::at(0), DendronPosition::at(2)), 14);
  EXPECT_EQ(dendron_dist(l, {kNoVertex, 0, 3}, {kNoVertex, 1, 1}), 8);
  EXPECT_EQ(dendron_dist(l, {kNoVertex, 0, 10}, DendronPosition::at(1)), 0);
  EXPECT_THROW(dendron_dist(l, {kNoVertex, 0, 11}, DendronPosition::at(1)), std::out_of_range);
}

TEST(Dendron, MatchesSubdividedTree) {
  detail::Rng rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const Graph t = random_weighted_tree(2 + rng.below(30), rng, 8);
    const LcaStructure l(t);
    const Subdivided s = subdivide(t);
    for (int i = 0; i < 100; ++i) {
      const DendronPosition p = random_position(t, rng);
      const DendronPosition q = random_position(t, rng);
      const auto d = bfs_distances(s.graph, s.at(t, p));
      ASSERT_EQ(dendron_dist(l, p, q), d[s.at(t, q)]);
    }
  }
}

TEST(PointCoords, Examples) {
  // A 2x2 cell between (0,0) and (2,2) as a weighted 4-cycle.
  const Graph sq(4, {{0, 1}, {1, 3}, {2, 3}, {0, 2}}, {2, 2, 2, 2});
  const TwoTreeEmbedding e = embed(sq);
  const CellComplex c = complex_from_network(sq);
  ASSERT_EQ(c.cells.size(), 1u);

  const auto v = point_coords(e, c, AtVertex{3});
  EXPECT_EQ(v[0], DendronPosition::at(e.coords[0][3]));
  EXPECT_EQ(v[1], DendronPosition::at(e.coords[1][3]));

  const auto mid = point_coords(e, c, OnEdge{0, 1});
  const std::size_t moving = e.class_color[e.theta.edge_class[0]] - 1u;
  EXPECT_EQ(mid[moving].offset, 1);
  EXPECT_NE(mid[moving].edge, kNoEdge);
  EXPECT_EQ(mid[1 - moving].edge, kNoEdge);

  const auto center = point_coords(e, c, InCell{0, 1, 1});
  EXPECT_EQ(center[0].offset, 1);
  EXPECT_EQ(center[1].offset, 1);
  EXPECT_THROW(point_coords(e, c, InCell{0, 3, 1}), std::out_of_range);
  EXPECT_THROW(point_coords(e, c, OnEdge{0, -1}), std::out_of_range);
}

TEST(PointDist, Examples) {
  const RectPolygon rect = validate_polygon({{0, 0}, {3, 0}, {3, 2}, {0, 2}});
  const GridArrangement a = grid_network(rect);
  const TwoTreeEmbedding e = embed(a.network);
  const CellComplex c = complex_from_network(a.network);
  const DistanceOracle o(e);
  const ComplexPoint p = AtVertex{*a.vertex_at({0, 0})};
  const ComplexPoint q = AtVertex{*a.vertex_at({3, 2})};
  EXPECT_EQ(point_dist(o, e, c, p, p), 0);
  EXPECT_EQ(point_dist(o, e, c, p, q), 5);
  EXPECT_EQ(point_dist(o, e, c, locate(a, c, e, {1, 1}), locate(a, c, e, {2, 0})), 2);

  const RectPolygon u = validate_polygon({{0, 0}, {5, 0}, {5, 3}, {4, 3}, {4, 1}, {1, 1}, {1, 3}, {0, 3}});
  const GridArrangement au = grid_network(u);
  const TwoTreeEmbedding eu = embed(au.network);
  const CellComplex cu = complex_from_network(au.network);
  const DistanceOracle ou(eu);
  for (const auto& [s, t] : {std::pair<Point, Point>{{0, 3}, {5, 3}}, {{1, 3}, {4, 3}}, {{0, 2}, {5, 2}}}) {
    EXPECT_EQ(point_dist(ou, eu, cu, locate(au, cu, eu, s), locate(au, cu, eu, t)), geodesic_dist(u, s, t));
  }
  EXPECT_EQ(point_dist(ou, eu, cu, locate(au, cu, eu, {0, 3}), locate(au, cu, eu, {5, 3})), 9);
}

TEST(PointDist, MetricLaws) {
  detail::Rng rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const RectPolygon p = gen_random_polygon(3 + rng.below(15), rng.next(), 6);
    const GridArrangement a = grid_network(p);
    const TwoTreeEmbedding e = embed(a.network);
    const CellComplex c = complex_from_network(a.network);
    const DistanceOracle o(e);
    Coord maxx = 0, maxy = 0;
    for (const Point& q : p.corners) {
      maxx = std::max(maxx, q.x);
      maxy = std::max(maxy, q.y);
    }
    auto sample = [&]() {
      for (;;) {
        const Point q{rng.between(0, maxx), rng.between(0, maxy)};
        if (contains(p, q)) return q;
      }
    };
    for (int i = 0; i < 20; ++i) {
      const Point s = sample(), t = sample(), r = sample();
      const ComplexPoint ps = locate(a, c, e, s), pt = locate(a, c, e, t), pr = locate(a, c, e, r);
      const Length st = point_dist(o, e, c, ps, pt);
      EXPECT_EQ(st, point_dist(o, e, c, pt, ps));
      EXPECT_LE(st, point_dist(o, e, c, ps, pr) + point_dist(o, e, c, pr, pt));
      EXPECT_GE(st, std::abs(s.x - t.x) + std::abs(s.y - t.y));
      // Each tree contributes at least its own coordinate difference.
      const auto cs = point_coords(e, c, ps), ct = point_coords(e, c, pt);
      EXPECT_GE(st, dendron_dist(o.tree(0), cs[0], ct[0]));
      EXPECT_GE(st, dendron_dist(o.tree(1), cs[1], ct[1]));
    }
  }
}
