#pragma once

// Constant-time distance and median queries over a two-tree embedding.

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "ramify/complex.hpp"
#include "ramify/factorization.hpp"
#include "ramify/graph.hpp"

namespace ramify {

/// Lowest common ancestors in a rooted weighted tree.
///
/// Vertices are renumbered in DFS preorder. An ancestor precedes all of its
/// descendants in preorder, so over the Euler-tour window between two first
/// occurrences the LCA is simply the smallest preorder number. The sparse
/// table therefore stores plain preorder numbers and takes integer minima.
class LcaStructure {
 public:
  LcaStructure() = default;

  explicit LcaStructure(const Graph& tree, Vertex root = 0) : tree_(tree) {
    const std::size_t n = tree.vertex_count();
    if (n == 0) return;
    if (tree.edge_count() + 1 != n) throw std::invalid_argument("LcaStructure: not a tree");
    if (root >= n) throw std::out_of_range("LcaStructure: root is not a vertex");
    pre_.assign(n, kNoVertex);
    vertex_of_.reserve(n);
    first_.assign(n, 0);
    parent_.assign(n, kNoVertex);
    wdepth_.assign(n, 0);
    hdepth_.assign(n, 0);
    parent_edge_.assign(n, kNoEdge);

    std::vector<Vertex> tour;
    tour.reserve(2 * n - 1);
    struct Frame {
      Vertex v;
      std::size_t next;
    };
    std::vector<Frame> stack{{root, 0}};
    pre_[root] = 0;
    vertex_of_.push_back(root);
    first_[0] = 0;
    tour.push_back(0);
    while (!stack.empty()) {
      Frame& top = stack.back();
      const auto nb = tree.neighbors(top.v);
      if (top.next == nb.size()) {
        stack.pop_back();
        if (!stack.empty()) tour.push_back(pre_[stack.back().v]);
        continue;
      }
      const Vertex w = nb[top.next];
      const EdgeId e = tree.incident_edges(top.v)[top.next];
      ++top.next;
      if (w == parent_[top.v] && e == parent_edge_[top.v]) continue;
      if (pre_[w] != kNoVertex) throw std::invalid_argument("LcaStructure: not a tree");
      const Vertex p = static_cast<Vertex>(vertex_of_.size());
      pre_[w] = p;
      vertex_of_.push_back(w);
      parent_[w] = top.v;
      parent_edge_[w] = e;
      wdepth_[p] = wdepth_[pre_[top.v]] + tree.length(e);
      hdepth_[p] = hdepth_[pre_[top.v]] + 1;
      first_[p] = static_cast<std::uint32_t>(tour.size());
      tour.push_back(p);
      stack.push_back({w, 0});
    }
    if (vertex_of_.size() != n) throw std::invalid_argument("LcaStructure: not connected");

    const std::size_t t = tour.size();
    levels_ = static_cast<std::size_t>(std::bit_width(t));
    table_.resize(levels_);
    table_[0] = std::move(tour);
    for (std::size_t k = 1; k < levels_; ++k) {
      const std::size_t half = std::size_t{1} << (k - 1);
      const auto& below = table_[k - 1];
      auto& row = table_[k];
      row.resize(t - (std::size_t{1} << k) + 1);
      for (std::size_t i = 0; i < row.size(); ++i) row[i] = std::min(below[i], below[i + half]);
    }
  }

  std::size_t size() const { return pre_.size(); }
  const Graph& tree() const { return tree_; }

  Vertex preorder(Vertex v) const { return pre_[v]; }
  std::uint32_t first_occurrence(Vertex v) const { return first_[pre_[v]]; }
  Length weighted_depth(Vertex v) const { return wdepth_[pre_[v]]; }
  std::uint32_t hop_depth(Vertex v) const { return hdepth_[pre_[v]]; }
  Vertex parent(Vertex v) const { return parent_[v]; }

  /// Preorder number of the LCA of the vertices with first occurrences fa, fb.
  Vertex lca_preorder(std::uint32_t fa, std::uint32_t fb) const {
    if (fa > fb) std::swap(fa, fb);
    const auto k = static_cast<std::size_t>(std::bit_width(fb - fa + 1u) - 1);
    return std::min(table_[k][fa], table_[k][fb + 1 - (std::uint32_t{1} << k)]);
  }

  /// Weighted depth of the vertex with preorder number p.
  Length weighted_depth_at(Vertex p) const { return wdepth_[p]; }

  Vertex lca(Vertex a, Vertex b) const { return vertex_of_[lca_preorder(first_[pre_[a]], first_[pre_[b]])]; }

  Length dist(Vertex a, Vertex b) const {
    const Vertex pa = pre_[a];
    const Vertex pb = pre_[b];
    return wdepth_[pa] + wdepth_[pb] - 2 * wdepth_[lca_preorder(first_[pa], first_[pb])];
  }

  /// Median of three tree vertices: the deepest of the three pairwise LCAs.
  /// They all lie on one root path, so the deepest has the largest preorder.
  Vertex median(Vertex a, Vertex b, Vertex c) const {
    const std::uint32_t fa = first_[pre_[a]];
    const std::uint32_t fb = first_[pre_[b]];
    const std::uint32_t fc = first_[pre_[c]];
    return vertex_of_[std::max({lca_preorder(fa, fb), lca_preorder(fb, fc), lca_preorder(fa, fc)})];
  }

 private:
  Graph tree_;
  std::vector<Vertex> pre_;         // vertex -> preorder
  std::vector<Vertex> vertex_of_;   // preorder -> vertex
  std::vector<Vertex> parent_;      // by vertex
  std::vector<EdgeId> parent_edge_;  // by vertex
  std::vector<std::uint32_t> first_;  // by preorder
  std::vector<Length> wdepth_;        // by preorder
  std::vector<std::uint32_t> hdepth_;  // by preorder
  std::size_t levels_ = 0;
  std::vector<std::vector<Vertex>> table_;
};

/// A point of a metric tree: a vertex, or a point inside an edge at `offset`
/// from the edge's lower-id endpoint.
struct DendronPosition {
  Vertex vertex = kNoVertex;  // set for vertex positions
  EdgeId edge = kNoEdge;      // set for interior points
  Length offset = 0;

  static DendronPosition at(Vertex v) { return {v, kNoEdge, 0}; }
  bool operator==(const DendronPosition&) const = default;
};

/// Canonical form: offsets at either end of an edge become vertices.
inline DendronPosition normalize(const Graph& tree, DendronPosition p) {
  if (p.edge == kNoEdge) return p;
  if (p.edge >= tree.edge_count()) throw std::out_of_range("dendron position: no such tree edge");
  const Length len = tree.length(p.edge);
  if (p.offset < 0 || p.offset > len) throw std::out_of_range("dendron position: offset outside the edge");
  if (p.offset == 0) return DendronPosition::at(tree.edge(p.edge).u);
  if (p.offset == len) return DendronPosition::at(tree.edge(p.edge).v);
  return {kNoVertex, p.edge, p.offset};
}

/// Geodesic length between two points of the metric tree of `l`.
inline Length dendron_dist(const LcaStructure& l, DendronPosition p, DendronPosition q) {
  const Graph& t = l.tree();
  p = normalize(t, p);
  q = normalize(t, q);
  if (p.edge != kNoEdge && p.edge == q.edge) return p.offset > q.offset ? p.offset - q.offset : q.offset - p.offset;

  // Each point reaches the rest of the tree through an endpoint of its edge
  // (or is itself a vertex); take the best routing.
  struct Exit {
    Vertex v;
    Length cost;
  };
  auto exits = [&](const DendronPosition& x, std::array<Exit, 2>& out) -> std::size_t {
    if (x.edge == kNoEdge) {
      out[0] = {x.vertex, 0};
      return 1;
    }
    const Edge& e = t.edge(x.edge);
    out[0] = {e.u, x.offset};
    out[1] = {e.v, t.length(x.edge) - x.offset};
    return 2;
  };
  std::array<Exit, 2> ep{}, eq{};
  const std::size_t np = exits(p, ep);
  const std::size_t nq = exits(q, eq);
  Length best = kUnreachable;
  for (std::size_t i = 0; i < np; ++i) {
    for (std::size_t j = 0; j < nq; ++j) best = std::min(best, ep[i].cost + l.dist(ep[i].v, eq[j].v) + eq[j].cost);
  }
  return best;
}

class UnknownVertexError : public Error {
 public:
  explicit UnknownVertexError(std::uint64_t v) : Error("unknown vertex " + std::to_string(v)) {}
};

/// Distances and medians of a partial double tree from its two tree factors.
class DistanceOracle {
 public:
  DistanceOracle() = default;

  explicit DistanceOracle(const TwoTreeEmbedding& e)
      : trees_{LcaStructure(e.trees[0]), LcaStructure(e.trees[1])}, coords_(e.coords), inverse_(e.inverse) {
    keys_.resize(e.vertex_count());
    for (Vertex x = 0; x < e.vertex_count(); ++x) {
      Key& k = keys_[x];
      for (std::size_t i = 0; i < 2; ++i) {
        k.first[i] = trees_[i].first_occurrence(coords_[i][x]);
        k.depth[i] = trees_[i].weighted_depth(coords_[i][x]);
      }
    }
  }

  std::size_t vertex_count() const { return keys_.size(); }
  const LcaStructure& tree(std::size_t i) const { return trees_[i]; }
  Vertex coord(std::size_t i, Vertex x) const { return coords_[i][x]; }

  Length dist(Vertex u, Vertex v) const {
    if (u >= keys_.size()) throw UnknownVertexError(u);
    if (v >= keys_.size()) throw UnknownVertexError(v);
    const Key& a = keys_[u];
    const Key& b = keys_[v];
    Length d = 0;
    for (std::size_t i = 0; i < 2; ++i) {
      d += a.depth[i] + b.depth[i] - 2 * trees_[i].weighted_depth_at(trees_[i].lca_preorder(a.first[i], b.first[i]));
    }
    return d;
  }

  /// The median of x, y, z, assembled from the two tree medians.
  Vertex median(Vertex x, Vertex y, Vertex z) const {
    for (const Vertex v : {x, y, z}) {
      if (v >= keys_.size()) throw UnknownVertexError(v);
    }
    const Vertex m1 = trees_[0].median(coords_[0][x], coords_[0][y], coords_[0][z]);
    const Vertex m2 = trees_[1].median(coords_[1][x], coords_[1][y], coords_[1][z]);
    const auto it = inverse_.find((std::uint64_t{m1} << 32) | m2);
    if (it == inverse_.end()) throw InternalDefect("median: coordinate pair of the median is not a vertex");
    return it->second;
  }

 private:
  struct Key {
    std::array<std::uint32_t, 2> first;
    std::array<Length, 2> depth;
  };
  std::array<LcaStructure, 2> trees_;
  std::array<std::vector<Vertex>, 2> coords_;
  std::unordered_map<std::uint64_t, Vertex> inverse_;
  std::vector<Key> keys_;
};

inline DistanceOracle build_oracle(const TwoTreeEmbedding& e) { return DistanceOracle(e); }

/// A point of the complex: a vertex, a point on an edge at `offset` from the
/// edge's lower-id endpoint, or a point of a square cell at `a` along the
/// cell side of color 1 and `b` along the side of color 2, both measured from
/// the cell's smallest-id corner.
struct AtVertex {
  Vertex v;
};
struct OnEdge {
  EdgeId e;
  Length offset;
};
struct InCell {
  std::uint32_t cell;
  Length a, b;
};
using ComplexPoint = std::variant<AtVertex, OnEdge, InCell>;

namespace detail {

// Position at `offset` along the tree edge of graph edge `ge`, walking away
// from the tree vertex that graph vertex `from` maps to.
inline DendronPosition along(const TwoTreeEmbedding& e, std::size_t tree, EdgeId ge, Vertex from, Length offset) {
  const std::uint32_t cls = e.theta.edge_class[ge];
  const EdgeId te = e.class_edge[tree][cls];
  if (te == kNoEdge) throw InternalDefect("point_coords: edge class has no edge in this tree");
  const Graph& t = e.trees[tree];
  const Length len = t.length(te);
  if (offset < 0 || offset > len) throw std::out_of_range("point_coords: offset outside the cell");
  const Vertex start = e.coords[tree][from];
  return normalize(t, {kNoVertex, te, t.edge(te).u == start ? offset : len - offset});
}

}  // namespace detail

/// Lifts a point of the complex to its pair of positions in the two trees.
inline std::array<DendronPosition, 2> point_coords(const TwoTreeEmbedding& e, const CellComplex& c,
                                                   const ComplexPoint& p) {
  const Graph& g = c.network;
  return std::visit(
      [&](const auto& x) -> std::array<DendronPosition, 2> {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, AtVertex>) {
          if (x.v >= g.vertex_count()) throw UnknownVertexError(x.v);
          return {DendronPosition::at(e.coords[0][x.v]), DendronPosition::at(e.coords[1][x.v])};
        } else if constexpr (std::is_same_v<T, OnEdge>) {
          if (x.e >= g.edge_count()) throw std::out_of_range("point_coords: no such edge");
          const Edge& ge = g.edge(x.e);
          const std::size_t moving = e.class_color[e.theta.edge_class[x.e]] - 1u;
          std::array<DendronPosition, 2> out;
          out[moving] = detail::along(e, moving, x.e, ge.u, x.offset);
          out[1 - moving] = DendronPosition::at(e.coords[1 - moving][ge.u]);
          return out;
        } else {
          if (x.cell >= c.cells.size()) throw std::out_of_range("point_coords: no such cell");
          const CellFrame f = cell_frame(c.cells[x.cell]);
          EdgeId side1 = f.sides[0];
          EdgeId side2 = f.sides[1];
          if (e.class_color[e.theta.edge_class[side1]] != 1) std::swap(side1, side2);
          if (e.class_color[e.theta.edge_class[side1]] != 1 || e.class_color[e.theta.edge_class[side2]] != 2) {
            throw InternalDefect("point_coords: cell is not dichromatic");
          }
          return {detail::along(e, 0, side1, f.base, x.a), detail::along(e, 1, side2, f.base, x.b)};
        }
      },
      p);
}

/// Intrinsic l1 distance between two points of the complex.
inline Length point_dist(const DistanceOracle& o, const TwoTreeEmbedding& e, const CellComplex& c,
                         const ComplexPoint& p, const ComplexPoint& q) {
  const auto a = point_coords(e, c, p);
  const auto b = point_coords(e, c, q);
  return dendron_dist(o.tree(0), a[0], b[0]) + dendron_dist(o.tree(1), a[1], b[1]);
}

}  // namespace ramify
