#pragma once

// Extraction of the two tree factors of a partial double tree.
//
// Edges are grouped into classes by the transitive closure of "opposite in a
// square". Two classes that meet in a square must end up in different trees,
// so the class graph is 2-colored; contracting every edge of the other color
// then collapses the graph onto tree i, and the two contractions together give
// each vertex its pair of tree coordinates.

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ramify/detail/disjoint_set.hpp"
#include "ramify/graph.hpp"
#include "ramify/recognition.hpp"

namespace ramify {

class WeightMismatchError : public Error {
 public:
  WeightMismatchError(std::uint32_t cls, EdgeId a, EdgeId b)
      : Error("opposite edges " + std::to_string(a) + " and " + std::to_string(b) +
              " of a square have different lengths"),
        class_id_(cls),
        a_(a),
        b_(b) {}
  std::uint32_t class_id() const { return class_id_; }
  EdgeId first_edge() const { return a_; }
  EdgeId second_edge() const { return b_; }

 private:
  std::uint32_t class_id_;
  EdgeId a_, b_;
};

class NotPartialDoubleTreeError : public Error {
 public:
  NotPartialDoubleTreeError(Witness w, const std::string& detail)
      : Error("not a partial double tree: " + detail), witness_(std::move(w)) {}
  const Witness& witness() const { return witness_; }

 private:
  Witness witness_;
};

/// Edge classes under the square-opposite closure. Class ids are assigned in
/// order of each class's smallest edge id, which is its representative.
struct ThetaPartition {
  std::vector<std::uint32_t> edge_class;
  std::size_t class_count = 0;
  std::vector<EdgeId> representative;
  std::vector<Length> class_length;
};

namespace detail {

// Relabels union-find roots to dense ids ordered by smallest member.
inline ThetaPartition partition_from(const Graph& g, DisjointSet& dsu) {
  ThetaPartition t;
  t.edge_class.assign(g.edge_count(), 0);
  std::vector<std::uint32_t> id_of_root(g.edge_count(), std::numeric_limits<std::uint32_t>::max());
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const std::uint32_t r = dsu.find(e);
    if (id_of_root[r] == std::numeric_limits<std::uint32_t>::max()) {
      id_of_root[r] = static_cast<std::uint32_t>(t.class_count++);
      t.representative.push_back(e);
      t.class_length.push_back(g.length(e));
    }
    t.edge_class[e] = id_of_root[r];
  }
  return t;
}

}  // namespace detail

/// Classes of the opposite-edge relation over the listed squares, by a
/// disjoint-set pass. Throws WeightMismatchError when two opposite edges of a
/// square differ in length.
inline ThetaPartition theta_classes(const Graph& g, std::span<const Square> squares) {
  detail::DisjointSet dsu(g.edge_count());
  for (const Square& s : squares) {
    dsu.unite(s.last_y, s.z_w);
    dsu.unite(s.last_z, s.y_w);
  }
  ThetaPartition t = detail::partition_from(g, dsu);
  for (const Square& s : squares) {
    for (const auto& [a, b] : {std::pair{s.last_y, s.z_w}, std::pair{s.last_z, s.y_w}}) {
      if (g.length(a) != g.length(b)) throw WeightMismatchError(t.edge_class[a], a, b);
    }
  }
  return t;
}

/// Classes as vertices; one edge per square joining its two classes.
struct ClassGraph {
  std::size_t class_count = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
};

inline ClassGraph class_graph(const ThetaPartition& theta, std::span<const Square> squares) {
  ClassGraph cg;
  cg.class_count = theta.class_count;
  cg.edges.reserve(squares.size());
  for (const Square& s : squares) {
    const std::uint32_t a = theta.edge_class[s.last_y];
    const std::uint32_t b = theta.edge_class[s.last_z];
    if (a == b) throw InternalDefect("class_graph: a square has all four edges in one class");
    cg.edges.emplace_back(a, b);
  }
  return cg;
}

class OddClassCycleError : public InternalDefect {
 public:
  explicit OddClassCycleError(std::vector<std::uint32_t> cycle)
      : InternalDefect("class graph of a recognized graph is not bipartite"), cycle_(std::move(cycle)) {}
  const std::vector<std::uint32_t>& cycle() const { return cycle_; }

 private:
  std::vector<std::uint32_t> cycle_;
};

/// Colors 1 and 2 per class. Components of the class graph are colored in
/// order of their smallest class id, which gets color 1; classes without any
/// square therefore all receive color 1.
inline std::vector<std::uint8_t> two_color_classes(const ClassGraph& cg) {
  std::vector<std::size_t> offsets(cg.class_count + 1, 0);
  for (const auto& [a, b] : cg.edges) {
    ++offsets[a + 1];
    ++offsets[b + 1];
  }
  for (std::size_t i = 0; i < cg.class_count; ++i) offsets[i + 1] += offsets[i];
  std::vector<std::uint32_t> adj(offsets.back());
  {
    std::vector<std::size_t> fill(offsets.begin(), offsets.end() - 1);
    for (const auto& [a, b] : cg.edges) {
      adj[fill[a]++] = b;
      adj[fill[b]++] = a;
    }
  }
  auto tc = detail::two_color(cg.class_count, [&](std::uint32_t u, auto&& visit) {
    for (std::size_t k = offsets[u]; k < offsets[u + 1]; ++k) visit(adj[k]);
  });
  if (!tc.ok()) throw OddClassCycleError(std::move(tc.odd_cycle));
  for (auto& c : tc.side) c = static_cast<std::uint8_t>(c + 1);
  return std::move(tc.side);
}

class NotATreeError : public InternalDefect {
 public:
  using InternalDefect::InternalDefect;
};

/// One tree factor: the tree, the coordinate of every graph vertex, and for
/// each class of this factor's color the tree edge it contracts onto.
struct TreeFactor {
  Graph tree;
  std::vector<Vertex> coord;
  std::vector<EdgeId> class_edge;  // kNoEdge for classes of the other color
};

/// Contracts every edge whose class is not colored `color` (1 or 2).
/// Tree vertices are numbered by the smallest graph vertex they contain;
/// tree edges follow class order and carry the class length.
inline TreeFactor extract_tree(const Graph& g, const ThetaPartition& theta, std::span<const std::uint8_t> class_color,
                               std::uint8_t color) {
  const std::size_t n = g.vertex_count();
  detail::DisjointSet dsu(n);
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (class_color[theta.edge_class[e]] != color) dsu.unite(g.edge(e).u, g.edge(e).v);
  }
  TreeFactor f;
  f.coord.assign(n, kNoVertex);
  std::vector<Vertex> id_of_root(n, kNoVertex);
  Vertex next = 0;
  for (Vertex x = 0; x < n; ++x) {
    const std::uint32_t r = dsu.find(x);
    if (id_of_root[r] == kNoVertex) id_of_root[r] = next++;
    f.coord[x] = id_of_root[r];
  }

  f.class_edge.assign(theta.class_count, kNoEdge);
  std::vector<Edge> edges;
  std::vector<Length> lengths;
  for (std::uint32_t c = 0; c < theta.class_count; ++c) {
    if (class_color[c] != color) continue;
    const Edge& rep = g.edge(theta.representative[c]);
    const Vertex a = f.coord[rep.u];
    const Vertex b = f.coord[rep.v];
    if (a == b) throw NotATreeError("extract_tree: class " + std::to_string(c) + " contracts to a loop");
    f.class_edge[c] = static_cast<EdgeId>(edges.size());
    edges.push_back({std::min(a, b), std::max(a, b)});
    lengths.push_back(theta.class_length[c]);
  }
  // Every edge of a class must land on its class's tree edge.
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const std::uint32_t c = theta.edge_class[e];
    if (class_color[c] != color) continue;
    const Edge& te = edges[f.class_edge[c]];
    const Vertex a = std::min(f.coord[g.edge(e).u], f.coord[g.edge(e).v]);
    const Vertex b = std::max(f.coord[g.edge(e).u], f.coord[g.edge(e).v]);
    if (a != te.u || b != te.v) throw NotATreeError("extract_tree: class " + std::to_string(c) + " is split");
  }
  if (edges.size() + 1 != next) throw NotATreeError("extract_tree: contraction is not a tree");
  detail::DisjointSet acyclic(next);
  for (const Edge& e : edges) {
    if (!acyclic.unite(e.u, e.v)) throw NotATreeError("extract_tree: contraction has a cycle");
  }
  try {
    f.tree = Graph(next, std::move(edges), std::move(lengths));
  } catch (const GraphError& err) {
    throw NotATreeError(std::string("extract_tree: ") + err.what());
  }
  return f;
}

/// Isometric embedding of a graph into the product of two trees.
struct TwoTreeEmbedding {
  std::array<Graph, 2> trees;
  std::array<std::vector<Vertex>, 2> coords;
  ThetaPartition theta;
  std::vector<std::uint8_t> class_color;         // 1 or 2 per class
  std::array<std::vector<EdgeId>, 2> class_edge;  // per class, its tree edge in the tree of its color
  std::unordered_map<std::uint64_t, Vertex> inverse;

  std::size_t vertex_count() const { return coords[0].size(); }

  std::optional<Vertex> lookup(Vertex c1, Vertex c2) const {
    const auto it = inverse.find((std::uint64_t{c1} << 32) | c2);
    if (it == inverse.end()) return std::nullopt;
    return it->second;
  }
};

/// Runs the factorization on an already recognized graph.
inline TwoTreeEmbedding embed(const Graph& g, const RecognitionReport& report) {
  if (!report.yes()) {
    throw NotPartialDoubleTreeError(*report.witness, std::string(witness_kind(*report.witness)));
  }
  TwoTreeEmbedding e;
  e.theta = theta_classes(g, report.squares);
  e.class_color = two_color_classes(class_graph(e.theta, report.squares));
  for (std::uint8_t i = 0; i < 2; ++i) {
    TreeFactor f = extract_tree(g, e.theta, e.class_color, static_cast<std::uint8_t>(i + 1));
    e.trees[i] = std::move(f.tree);
    e.coords[i] = std::move(f.coord);
    e.class_edge[i] = std::move(f.class_edge);
  }
  e.inverse.reserve(g.vertex_count());
  for (Vertex x = 0; x < g.vertex_count(); ++x) {
    const auto key = (std::uint64_t{e.coords[0][x]} << 32) | e.coords[1][x];
    if (!e.inverse.emplace(key, x).second) throw InternalDefect("embed: two vertices share coordinates");
  }
  return e;
}

/// Recognizes and factors `g`. Throws NotPartialDoubleTreeError carrying the
/// recognition witness when `g` does not embed in a product of two trees.
inline TwoTreeEmbedding embed(const Graph& g) { return embed(g, recognize(g)); }

/// Checks d_G(u, v) = d_T1(c1 u, c1 v) + d_T2(c2 u, c2 v) on the given pairs
/// with plain shortest-path searches (one per distinct source), independent of
/// any LCA machinery.
inline bool verify_isometry(const TwoTreeEmbedding& e, const Graph& g,
                            std::span<const std::pair<Vertex, Vertex>> pairs) {
  if (e.vertex_count() != g.vertex_count()) return false;
  std::vector<std::pair<Vertex, Vertex>> sorted(pairs.begin(), pairs.end());
  std::sort(sorted.begin(), sorted.end());
  std::size_t i = 0;
  while (i < sorted.size()) {
    const Vertex u = sorted[i].first;
    if (u >= g.vertex_count()) return false;
    const auto dg = bfs_distances(g, u);
    const auto d1 = bfs_distances(e.trees[0], e.coords[0][u]);
    const auto d2 = bfs_distances(e.trees[1], e.coords[1][u]);
    for (; i < sorted.size() && sorted[i].first == u; ++i) {
      const Vertex v = sorted[i].second;
      if (v >= g.vertex_count()) return false;
      const Length t1 = d1[e.coords[0][v]];
      const Length t2 = d2[e.coords[1][v]];
      if (dg[v] == kUnreachable || t1 == kUnreachable || t2 == kUnreachable || dg[v] != t1 + t2) return false;
    }
  }
  return true;
}

/// All ordered pairs.
inline bool verify_isometry(const TwoTreeEmbedding& e, const Graph& g) {
  std::vector<std::pair<Vertex, Vertex>> pairs;
  pairs.reserve(g.vertex_count() * g.vertex_count());
  for (Vertex u = 0; u < g.vertex_count(); ++u) {
    for (Vertex v = 0; v < g.vertex_count(); ++v) pairs.emplace_back(u, v);
  }
  return verify_isometry(e, g, pairs);
}

}  // namespace ramify
