#pragma once

// Slow, definitional checks used to validate the fast paths: intervals,
// medians, the distance form of the Djokovic-Winkler relation, convex splits
// and their incompatibility graph, brute-force automorphisms and isomorphism,
// cut vertices and 4-cycles.

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ramify/detail/disjoint_set.hpp"
#include "ramify/graph.hpp"

namespace ramify {

class TooLargeError : public Error {
 public:
  TooLargeError(std::size_t n, std::size_t limit)
      : Error("graph has " + std::to_string(n) + " vertices; the limit here is " + std::to_string(limit)) {}
};

class NotMedianError : public Error {
 public:
  NotMedianError() : Error("graph is not a median graph") {}
};

/// All-pairs hop distances.
class DistanceMatrix {
 public:
  explicit DistanceMatrix(const Graph& g) : n_(g.vertex_count()), d_(n_ * n_) {
    for (Vertex s = 0; s < n_; ++s) {
      const auto row = bfs_distances(g, s, Metric::kHops);
      std::copy(row.begin(), row.end(), d_.begin() + static_cast<std::ptrdiff_t>(s * n_));
    }
  }
  std::size_t size() const { return n_; }
  Length operator()(Vertex u, Vertex v) const { return d_[u * n_ + v]; }
  bool connected() const {
    return std::none_of(d_.begin(), d_.end(), [](Length x) { return x == kUnreachable; });
  }

 private:
  std::size_t n_;
  std::vector<Length> d_;
};

/// I(u, v) in ascending order.
inline std::vector<Vertex> interval(const DistanceMatrix& d, Vertex u, Vertex v) {
  std::vector<Vertex> out;
  for (Vertex z = 0; z < d.size(); ++z) {
    if (d(u, z) != kUnreachable && d(z, v) != kUnreachable && d(u, z) + d(z, v) == d(u, v)) out.push_back(z);
  }
  return out;
}

inline std::vector<Vertex> interval(const Graph& g, Vertex u, Vertex v) { return interval(DistanceMatrix(g), u, v); }

/// Vertices in I(x,y) ∩ I(y,z) ∩ I(z,x).
inline std::vector<Vertex> medians(const DistanceMatrix& d, Vertex x, Vertex y, Vertex z) {
  std::vector<Vertex> out;
  for (Vertex m = 0; m < d.size(); ++m) {
    if (d(x, m) + d(m, y) == d(x, y) && d(y, m) + d(m, z) == d(y, z) && d(z, m) + d(m, x) == d(z, x)) {
      out.push_back(m);
    }
  }
  return out;
}

struct MedianCheck {
  bool median = false;
  std::optional<std::array<Vertex, 3>> witness;  // first triple without a unique median
};

/// Checks |I(x,y) ∩ I(y,z) ∩ I(z,x)| = 1 over all triples x < y < z (triples
/// with a repeated vertex always have a unique median). Intervals are kept as
/// bitsets, so the cost is O(n^4 / 64).
inline MedianCheck is_median_graph(const Graph& g) {
  const std::size_t n = g.vertex_count();
  MedianCheck r;
  if (n == 0) return r;
  const DistanceMatrix d(g);
  if (!d.connected()) return r;
  const std::size_t words = (n + 63) / 64;
  std::vector<std::uint64_t> bits(n * n * words, 0);
  auto row = [&](Vertex u, Vertex v) { return bits.data() + (u * n + v) * words; };
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = 0; v < n; ++v) {
      for (const Vertex z : interval(d, u, v)) row(u, v)[z / 64] |= std::uint64_t{1} << (z % 64);
    }
  }
  for (Vertex x = 0; x < n; ++x) {
    for (Vertex y = x + 1; y < n; ++y) {
      for (Vertex z = y + 1; z < n; ++z) {
        const std::uint64_t* a = row(x, y);
        const std::uint64_t* b = row(y, z);
        const std::uint64_t* c = row(x, z);
        int count = 0;
        for (std::size_t w = 0; w < words && count < 2; ++w) count += std::popcount(a[w] & b[w] & c[w]);
        if (count != 1) {
          r.witness = {x, y, z};
          return r;
        }
      }
    }
  }
  r.median = true;
  return r;
}

struct EdgePartition {
  std::vector<std::uint32_t> edge_class;  // ids ordered by each class's smallest edge
  std::size_t class_count = 0;
};

/// Edges uv and xw are related when d(u,x) + d(v,w) != d(u,w) + d(v,x); the
/// result is the transitive closure of that relation.
inline EdgePartition theta_by_distance(const Graph& g) {
  const DistanceMatrix d(g);
  const std::size_t m = g.edge_count();
  detail::DisjointSet dsu(m);
  for (EdgeId e = 0; e < m; ++e) {
    const Edge a = g.edge(e);
    for (EdgeId f = e + 1; f < m; ++f) {
      const Edge b = g.edge(f);
      if (d(a.u, b.u) + d(a.v, b.v) != d(a.u, b.v) + d(a.v, b.u)) dsu.unite(e, f);
    }
  }
  EdgePartition p;
  p.edge_class.assign(m, 0);
  std::vector<std::uint32_t> id(m, std::numeric_limits<std::uint32_t>::max());
  for (EdgeId e = 0; e < m; ++e) {
    const auto r = dsu.find(e);
    if (id[r] == std::numeric_limits<std::uint32_t>::max()) id[r] = static_cast<std::uint32_t>(p.class_count++);
    p.edge_class[e] = id[r];
  }
  return p;
}

/// The split (W(u,v), W(v,u)) of a representative edge uv; side[x] is 1 for
/// x in W(u,v).
struct ConvexSplit {
  EdgeId edge = kNoEdge;
  std::vector<char> side;
};

struct IncGraph {
  std::vector<ConvexSplit> splits;  // one per class, in class order
  Graph graph;                      // incompatible pairs
};

inline bool splits_incompatible(const ConvexSplit& a, const ConvexSplit& b) {
  bool seen[2][2] = {{false, false}, {false, false}};
  for (std::size_t x = 0; x < a.side.size(); ++x) seen[a.side[x] != 0][b.side[x] != 0] = true;
  return seen[0][0] && seen[0][1] && seen[1][0] && seen[1][1];
}

/// Inc(G). Throws NotMedianError when g is not a median graph.
inline IncGraph inc_graph(const Graph& g) {
  if (!is_median_graph(g).median) throw NotMedianError();
  const DistanceMatrix d(g);
  const EdgePartition theta = theta_by_distance(g);
  IncGraph inc;
  inc.splits.resize(theta.class_count);
  std::vector<char> done(theta.class_count, 0);
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const auto c = theta.edge_class[e];
    if (done[c]) continue;
    done[c] = 1;
    ConvexSplit& s = inc.splits[c];
    s.edge = e;
    s.side.resize(g.vertex_count());
    const Edge uv = g.edge(e);
    for (Vertex x = 0; x < g.vertex_count(); ++x) s.side[x] = d(uv.u, x) < d(uv.v, x) ? 1 : 0;
  }
  std::vector<Edge> edges;
  for (Vertex a = 0; a < inc.splits.size(); ++a) {
    for (Vertex b = a + 1; b < inc.splits.size(); ++b) {
      if (splits_incompatible(inc.splits[a], inc.splits[b])) edges.push_back({a, b});
    }
  }
  inc.graph = Graph(inc.splits.size(), std::move(edges));
  return inc;
}

/// Connected, median, and Inc(G) bipartite.
inline bool reference_recognizer(const Graph& g) {
  if (!is_connected(g)) return false;
  if (!is_median_graph(g).median) return false;
  return is_bipartite(inc_graph(g).graph).bipartite();
}

namespace detail {

// Counts bijections V(g) -> V(h) preserving all distances (hence adjacency),
// stopping after `limit` when nonzero. Vertices of g are placed in BFS order
// so every placed vertex after the first has a placed neighbor.
inline std::uint64_t count_isomorphisms(const Graph& g, const Graph& h, std::uint64_t limit) {
  const std::size_t n = g.vertex_count();
  if (h.vertex_count() != n || h.edge_count() != g.edge_count()) return 0;
  if (n == 0) return 1;
  const DistanceMatrix dg(g);
  const DistanceMatrix dh(h);
  auto profile = [n](const DistanceMatrix& d, Vertex v) {
    std::vector<Length> p(n);
    for (Vertex w = 0; w < n; ++w) p[w] = d(v, w);
    std::sort(p.begin(), p.end());
    return p;
  };
  std::vector<std::vector<Length>> pg(n), ph(n);
  for (Vertex v = 0; v < n; ++v) {
    pg[v] = profile(dg, v);
    ph[v] = profile(dh, v);
  }
  std::vector<Vertex> order;
  {
    std::vector<char> seen(n, 0);
    for (Vertex s = 0; s < n; ++s) {
      if (seen[s]) continue;
      seen[s] = 1;
      order.push_back(s);
      for (std::size_t i = order.size() - 1; i < order.size(); ++i) {
        for (const Vertex w : g.neighbors(order[i])) {
          if (!seen[w]) {
            seen[w] = 1;
            order.push_back(w);
          }
        }
      }
    }
  }
  std::vector<Vertex> image(n, kNoVertex);
  std::vector<char> used(n, 0);
  std::uint64_t count = 0;
  std::function<void(std::size_t)> place = [&](std::size_t k) {
    if (limit != 0 && count >= limit) return;
    if (k == n) {
      ++count;
      return;
    }
    const Vertex v = order[k];
    for (Vertex c = 0; c < n; ++c) {
      if (used[c] || g.degree(v) != h.degree(c) || pg[v] != ph[c]) continue;
      bool ok = true;
      for (std::size_t j = 0; j < k && ok; ++j) ok = dg(v, order[j]) == dh(c, image[order[j]]);
      if (!ok) continue;
      image[v] = c;
      used[c] = 1;
      place(k + 1);
      used[c] = 0;
      image[v] = kNoVertex;
    }
  };
  place(0);
  return count;
}

}  // namespace detail

inline constexpr std::size_t kIsomorphismLimit = 40;

/// |aut(g)| by backtracking. Throws TooLargeError beyond kIsomorphismLimit
/// vertices.
inline std::uint64_t automorphism_count(const Graph& g) {
  if (g.vertex_count() > kIsomorphismLimit) throw TooLargeError(g.vertex_count(), kIsomorphismLimit);
  return detail::count_isomorphisms(g, g, 0);
}

inline bool graphs_isomorphic(const Graph& g, const Graph& h) {
  const std::size_t n = std::max(g.vertex_count(), h.vertex_count());
  if (n > kIsomorphismLimit) throw TooLargeError(n, kIsomorphismLimit);
  return detail::count_isomorphisms(g, h, 1) == 1;
}

/// Cut vertices by the low-point method, iteratively.
inline std::vector<Vertex> cut_vertices(const Graph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<std::uint32_t> disc(n, 0), low(n, 0);
  std::vector<char> is_cut(n, 0);
  std::uint32_t timer = 0;
  struct Frame {
    Vertex v;
    EdgeId via;
    std::size_t next;
    std::uint32_t children;
  };
  for (Vertex root = 0; root < n; ++root) {
    if (disc[root]) continue;
    std::vector<Frame> stack{{root, kNoEdge, 0, 0}};
    disc[root] = low[root] = ++timer;
    while (!stack.empty()) {
      Frame& f = stack.back();
      if (f.next < g.degree(f.v)) {
        const Vertex w = g.neighbors(f.v)[f.next];
        const EdgeId e = g.incident_edges(f.v)[f.next];
        ++f.next;
        if (e == f.via) continue;
        if (disc[w]) {
          low[f.v] = std::min(low[f.v], disc[w]);
        } else {
          disc[w] = low[w] = ++timer;
          ++f.children;
          stack.push_back({w, e, 0, 0});
        }
        continue;
      }
      const Frame done = f;
      stack.pop_back();
      if (stack.empty()) {
        if (done.children >= 2) is_cut[done.v] = 1;
        continue;
      }
      Frame& parent = stack.back();
      low[parent.v] = std::min(low[parent.v], low[done.v]);
      if (stack.size() > 1 && low[done.v] >= disc[parent.v]) is_cut[parent.v] = 1;
    }
  }
  std::vector<Vertex> out;
  for (Vertex v = 0; v < n; ++v) {
    if (is_cut[v]) out.push_back(v);
  }
  return out;
}

/// Connected with at least 3 vertices and no cut vertex.
inline bool is_biconnected(const Graph& g) {
  return g.vertex_count() >= 3 && is_connected(g) && cut_vertices(g).empty();
}

/// Every 4-cycle, as its vertex set in ascending order, by brute force over
/// quadruples. A 4-set carrying more than one 4-cycle is listed once per cycle.
inline std::vector<std::array<Vertex, 4>> four_cycles(const Graph& g) {
  std::vector<std::array<Vertex, 4>> out;
  const auto n = static_cast<Vertex>(g.vertex_count());
  for (Vertex a = 0; a < n; ++a) {
    for (Vertex b = a + 1; b < n; ++b) {
      for (Vertex c = b + 1; c < n; ++c) {
        for (Vertex d = c + 1; d < n; ++d) {
          // The three ways to arrange four vertices on a cycle.
          const std::array<std::array<Vertex, 4>, 3> cyc = {{{a, b, c, d}, {a, b, d, c}, {a, c, b, d}}};
          for (const auto& q : cyc) {
            if (g.adjacent(q[0], q[1]) && g.adjacent(q[1], q[2]) && g.adjacent(q[2], q[3]) && g.adjacent(q[3], q[0])) {
              out.push_back({a, b, c, d});
            }
          }
        }
      }
    }
  }
  return out;
}

}  // namespace ramify
