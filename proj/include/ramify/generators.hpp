#pragma once

// Named graph families, simplex graphs, expansions and random instances.
// Random generators take an explicit 64-bit seed.

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ramify/detail/rng.hpp"
#include "ramify/graph.hpp"
#include "ramify/polygon.hpp"
#include "ramify/reference.hpp"

namespace ramify {

namespace detail {

inline void require_positive(std::size_t n, const char* what) {
  if (n == 0) throw std::invalid_argument(std::string(what) + ": size must be positive");
}

}  // namespace detail

inline Graph gen_path(std::size_t n) {
  detail::require_positive(n, "gen_path");
  std::vector<Edge> edges;
  for (Vertex i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1});
  return Graph(n, std::move(edges));
}

inline Graph gen_cycle(std::size_t n) {
  if (n < 3) throw std::invalid_argument("gen_cycle: need at least 3 vertices");
  std::vector<Edge> edges;
  for (Vertex i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1});
  edges.push_back({0, static_cast<Vertex>(n - 1)});
  return Graph(n, std::move(edges));
}

/// m rows by n columns; vertex r*n + c.
inline Graph gen_grid(std::size_t m, std::size_t n) {
  detail::require_positive(m, "gen_grid");
  detail::require_positive(n, "gen_grid");
  std::vector<Edge> edges;
  for (Vertex r = 0; r < m; ++r) {
    for (Vertex c = 0; c < n; ++c) {
      const auto v = static_cast<Vertex>(r * n + c);
      if (c + 1 < n) edges.push_back({v, v + 1});
      if (r + 1 < m) edges.push_back({v, static_cast<Vertex>(v + n)});
    }
  }
  return Graph(m * n, std::move(edges));
}

inline Graph gen_hypercube(std::size_t d) {
  detail::require_positive(d, "gen_hypercube");
  if (d > 24) throw std::invalid_argument("gen_hypercube: dimension too large");
  const std::size_t n = std::size_t{1} << d;
  std::vector<Edge> edges;
  for (Vertex v = 0; v < n; ++v) {
    for (std::size_t b = 0; b < d; ++b) {
      const Vertex w = v ^ (Vertex{1} << b);
      if (v < w) edges.push_back({v, w});
    }
  }
  return Graph(n, std::move(edges));
}

/// Uniform random labeled tree from a random Prufer sequence.
inline Graph gen_random_tree(std::size_t n, std::uint64_t seed) {
  detail::require_positive(n, "gen_random_tree");
  if (n == 1) return Graph(1, {});
  if (n == 2) return Graph(2, {{0, 1}});
  detail::Rng rng(seed);
  std::vector<Vertex> code(n - 2);
  for (auto& c : code) c = static_cast<Vertex>(rng.below(n));
  std::vector<std::uint32_t> degree(n, 1);
  for (const Vertex c : code) ++degree[c];
  // Linear decoding: `leaf` is the smallest current leaf.
  std::vector<Edge> edges;
  edges.reserve(n - 1);
  Vertex ptr = 0;
  while (degree[ptr] != 1) ++ptr;
  Vertex leaf = ptr;
  for (const Vertex c : code) {
    edges.push_back({std::min(leaf, c), std::max(leaf, c)});
    if (--degree[c] == 1 && c < ptr) {
      leaf = c;
    } else {
      ++ptr;
      while (degree[ptr] != 1) ++ptr;
      leaf = ptr;
    }
  }
  edges.push_back({std::min<Vertex>(leaf, static_cast<Vertex>(n - 1)), std::max<Vertex>(leaf, static_cast<Vertex>(n - 1))});
  return Graph(n, std::move(edges));
}

/// Random connected graph on n vertices: each pair is an edge with
/// probability p, redrawn until connected.
inline Graph gen_random_connected(std::size_t n, double p, std::uint64_t seed) {
  detail::require_positive(n, "gen_random_connected");
  detail::Rng rng(seed);
  for (;;) {
    std::vector<Edge> edges;
    for (Vertex u = 0; u < n; ++u) {
      for (Vertex v = u + 1; v < n; ++v) {
        if (rng.chance(p)) edges.push_back({u, v});
      }
    }
    Graph g(n, std::move(edges));
    if (is_connected(g)) return g;
  }
}

/// Random connected bipartite graph: a random side per vertex, each cross
/// pair an edge with probability p, redrawn until connected.
inline Graph gen_random_bipartite(std::size_t n, double p, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("gen_random_bipartite: need at least 2 vertices");
  detail::Rng rng(seed);
  for (;;) {
    std::vector<char> side(n);
    for (auto& s : side) s = rng.chance(0.5) ? 1 : 0;
    std::vector<Edge> edges;
    for (Vertex u = 0; u < n; ++u) {
      for (Vertex v = u + 1; v < n; ++v) {
        if (side[u] != side[v] && rng.chance(p)) edges.push_back({u, v});
      }
    }
    Graph g(n, std::move(edges));
    if (is_connected(g)) return g;
  }
}

/// Disjoint union; h's vertices follow g's.
inline Graph disjoint_union(const Graph& g, const Graph& h) {
  std::vector<Edge> edges(g.edges().begin(), g.edges().end());
  const auto shift = static_cast<Vertex>(g.vertex_count());
  for (const Edge& e : h.edges()) edges.push_back({e.u + shift, e.v + shift});
  return Graph(g.vertex_count() + h.vertex_count(), std::move(edges));
}

/// Cartesian product; vertex (a, b) is a * |V(h)| + b. Lengths carry over.
inline Graph cartesian_product(const Graph& g, const Graph& h) {
  const std::size_t nh = h.vertex_count();
  std::vector<Edge> edges;
  std::vector<Length> lengths;
  const bool weighted = g.weighted() || h.weighted();
  for (Vertex a = 0; a < g.vertex_count(); ++a) {
    for (EdgeId e = 0; e < h.edge_count(); ++e) {
      edges.push_back({static_cast<Vertex>(a * nh + h.edge(e).u), static_cast<Vertex>(a * nh + h.edge(e).v)});
      if (weighted) lengths.push_back(h.length(e));
    }
  }
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    for (Vertex b = 0; b < nh; ++b) {
      edges.push_back({static_cast<Vertex>(g.edge(e).u * nh + b), static_cast<Vertex>(g.edge(e).v * nh + b)});
      if (weighted) lengths.push_back(g.length(e));
    }
  }
  return Graph(g.vertex_count() * nh, std::move(edges), std::move(lengths));
}

/// κ(F) together with the clique of F behind each of its vertices.
struct SimplexGraph {
  Graph graph;
  std::vector<std::vector<Vertex>> simplices;  // by size, then lexicographic; simplices[0] is empty
};

/// Every clique of f (the empty one included), ordered by size then
/// lexicographically. Simple recursive extension; f is expected to be small.
inline std::vector<std::vector<Vertex>> cliques(const Graph& f) {
  std::vector<std::vector<Vertex>> out{{}};
  std::vector<Vertex> current;
  auto extend = [&](auto&& self, Vertex from) -> void {
    for (Vertex v = from; v < f.vertex_count(); ++v) {
      if (!std::all_of(current.begin(), current.end(), [&](Vertex u) { return f.adjacent(u, v); })) continue;
      current.push_back(v);
      out.push_back(current);
      self(self, v + 1);
      current.pop_back();
    }
  };
  extend(extend, 0);
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return out;
}

inline SimplexGraph simplex_graph(const Graph& f) {
  SimplexGraph s;
  s.simplices = cliques(f);
  std::map<std::vector<Vertex>, Vertex> index;
  for (Vertex i = 0; i < s.simplices.size(); ++i) index.emplace(s.simplices[i], i);
  std::vector<Edge> edges;
  for (Vertex i = 1; i < s.simplices.size(); ++i) {
    const auto& c = s.simplices[i];
    for (std::size_t drop = 0; drop < c.size(); ++drop) {
      std::vector<Vertex> face;
      for (std::size_t k = 0; k < c.size(); ++k) {
        if (k != drop) face.push_back(c[k]);
      }
      edges.push_back({index.at(face), i});
    }
  }
  s.graph = Graph(s.simplices.size(), std::move(edges));
  return s;
}

/// κ(C_n).
inline Graph cogwheel(std::size_t n) {
  if (n < 3) throw std::invalid_argument("cogwheel: need n >= 3");
  return simplex_graph(gen_cycle(n)).graph;
}

/// κ(κ(f)).
inline Graph iterated_simplex(const Graph& f) { return simplex_graph(simplex_graph(f).graph).graph; }

class NotConvexError : public Error {
 public:
  NotConvexError() : Error("vertex set is not convex") {}
};

/// True when the set is nonempty and contains every interval between its members.
inline bool is_convex_set(const Graph& g, const std::vector<Vertex>& set) {
  if (set.empty()) return false;
  const DistanceMatrix d(g);
  std::vector<char> in(g.vertex_count(), 0);
  for (const Vertex v : set) {
    if (v >= g.vertex_count()) return false;
    in[v] = 1;
  }
  for (const Vertex a : set) {
    for (const Vertex b : set) {
      for (const Vertex z : interval(d, a, b)) {
        if (!in[z]) return false;
      }
    }
  }
  return true;
}

/// Expansion of g along the convex set U: a copy U' of U is added, each u
/// joined to its copy, and copies adjacent whenever their originals are.
/// New vertices follow the old ones, in the order of U ascending.
inline Graph peripheral_expansion(const Graph& g, std::vector<Vertex> u_set) {
  std::sort(u_set.begin(), u_set.end());
  u_set.erase(std::unique(u_set.begin(), u_set.end()), u_set.end());
  if (!is_median_graph(g).median) throw NotMedianError();
  if (!is_convex_set(g, u_set)) throw NotConvexError();
  const std::size_t n = g.vertex_count();
  std::vector<Vertex> copy(n, kNoVertex);
  for (std::size_t i = 0; i < u_set.size(); ++i) copy[u_set[i]] = static_cast<Vertex>(n + i);
  std::vector<Edge> edges(g.edges().begin(), g.edges().end());
  for (const Vertex u : u_set) edges.push_back({u, copy[u]});
  for (const Edge& e : g.edges()) {
    if (copy[e.u] != kNoVertex && copy[e.v] != kNoVertex) edges.push_back({copy[e.u], copy[e.v]});
  }
  return Graph(n + u_set.size(), std::move(edges));
}

/// The spider with legs of 1, 2 and 3 edges: the smallest asymmetric tree.
inline Graph asymmetric_tree7() { return Graph(7, {{0, 1}, {0, 2}, {2, 3}, {0, 4}, {4, 5}, {5, 6}}); }

/// Monotone staircase: from (0,0) right to (X,0), then `steps` steps each
/// going up and then left, ending on the y axis. Step sizes are uniform in
/// [min_step, max_step].
inline RectPolygon gen_staircase_polygon(std::size_t steps, std::uint64_t seed, Coord min_step = 1,
                                         Coord max_step = 10) {
  detail::require_positive(steps, "gen_staircase_polygon");
  if (min_step < 1 || max_step < min_step) throw std::invalid_argument("gen_staircase_polygon: bad step range");
  detail::Rng rng(seed);
  std::vector<Coord> xs{0}, ys{0};
  for (std::size_t i = 0; i < steps; ++i) {
    xs.push_back(xs.back() + rng.between(min_step, max_step));
    ys.push_back(ys.back() + rng.between(min_step, max_step));
  }
  std::vector<Point> corners{{0, 0}};
  for (std::size_t i = steps; i >= 1; --i) {
    corners.push_back({xs[i], ys[steps - i]});
    corners.push_back({xs[i], ys[steps - i + 1]});
  }
  corners.push_back({0, ys[steps]});
  return validate_polygon(std::move(corners));
}

/// Random simply connected polyomino of `cells` unit squares grown from one
/// square (rejecting additions that would create holes or corner-only
/// contacts), with each grid column and row stretched to a random width in
/// [1, max_width].
inline RectPolygon gen_random_polygon(std::size_t cells, std::uint64_t seed, Coord max_width = 5) {
  detail::require_positive(cells, "gen_random_polygon");
  if (max_width < 1) throw std::invalid_argument("gen_random_polygon: bad width");
  detail::Rng rng(seed);
  const auto side = static_cast<std::ptrdiff_t>(2 * cells + 3);
  std::vector<char> full(static_cast<std::size_t>(side * side), 0);
  auto at = [&](std::ptrdiff_t x, std::ptrdiff_t y) -> char& { return full[static_cast<std::size_t>(y * side + x)]; };
  auto filled = [&](std::ptrdiff_t x, std::ptrdiff_t y) {
    return x >= 0 && y >= 0 && x < side && y < side && at(x, y) != 0;
  };
  auto pinch_free = [&](std::ptrdiff_t x, std::ptrdiff_t y) {
    for (std::ptrdiff_t dx = -1; dx <= 0; ++dx) {
      for (std::ptrdiff_t dy = -1; dy <= 0; ++dy) {
        const bool a = filled(x + dx, y + dy), b = filled(x + dx + 1, y + dy);
        const bool c = filled(x + dx, y + dy + 1), d = filled(x + dx + 1, y + dy + 1);
        if ((a && d && !b && !c) || (b && c && !a && !d)) return false;
      }
    }
    return true;
  };
  auto hole_free = [&]() {
    std::vector<char> seen(full.size(), 0);
    std::vector<std::ptrdiff_t> stack{0};
    seen[0] = 1;
    std::size_t reached = 1;
    while (!stack.empty()) {
      const std::ptrdiff_t c = stack.back();
      stack.pop_back();
      const std::ptrdiff_t x = c % side, y = c / side;
      const std::ptrdiff_t nb[4][2] = {{x + 1, y}, {x - 1, y}, {x, y + 1}, {x, y - 1}};
      for (const auto& q : nb) {
        if (q[0] < 0 || q[1] < 0 || q[0] >= side || q[1] >= side) continue;
        const auto k = static_cast<std::size_t>(q[1] * side + q[0]);
        if (seen[k] || full[k]) continue;
        seen[k] = 1;
        ++reached;
        stack.push_back(q[1] * side + q[0]);
      }
    }
    return reached + static_cast<std::size_t>(std::count(full.begin(), full.end(), 1)) == full.size();
  };

  const std::ptrdiff_t mid = side / 2;
  std::vector<std::pair<std::ptrdiff_t, std::ptrdiff_t>> shape{{mid, mid}};
  at(mid, mid) = 1;
  while (shape.size() < cells) {
    const auto [bx, by] = shape[rng.below(shape.size())];
    const std::ptrdiff_t dir[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
    const auto& dv = dir[rng.below(4)];
    const std::ptrdiff_t x = bx + dv[0], y = by + dv[1];
    if (x < 1 || y < 1 || x >= side - 1 || y >= side - 1 || at(x, y)) continue;
    at(x, y) = 1;
    if (!pinch_free(x, y) || !hole_free()) {
      at(x, y) = 0;
      continue;
    }
    shape.emplace_back(x, y);
  }

  // Boundary edges of each square counterclockwise; interior edges cancel.
  std::map<std::pair<std::ptrdiff_t, std::ptrdiff_t>, std::pair<std::ptrdiff_t, std::ptrdiff_t>> next;
  for (const auto& [x, y] : shape) {
    if (!filled(x, y - 1)) next[{x, y}] = {x + 1, y};
    if (!filled(x + 1, y)) next[{x + 1, y}] = {x + 1, y + 1};
    if (!filled(x, y + 1)) next[{x + 1, y + 1}] = {x, y + 1};
    if (!filled(x - 1, y)) next[{x, y + 1}] = {x, y};
  }
  std::vector<std::pair<std::ptrdiff_t, std::ptrdiff_t>> loop;
  const auto start = next.begin()->first;
  auto cur = start;
  do {
    loop.push_back(cur);
    cur = next.at(cur);
  } while (cur != start);

  std::vector<Coord> xcoord(static_cast<std::size_t>(side + 1), 0), ycoord(static_cast<std::size_t>(side + 1), 0);
  for (std::size_t i = 1; i < xcoord.size(); ++i) {
    xcoord[i] = xcoord[i - 1] + rng.between(1, max_width);
    ycoord[i] = ycoord[i - 1] + rng.between(1, max_width);
  }
  std::vector<Point> corners;
  for (std::size_t i = 0; i < loop.size(); ++i) {
    const auto& a = loop[(i + loop.size() - 1) % loop.size()];
    const auto& b = loop[i];
    const auto& c = loop[(i + 1) % loop.size()];
    const bool straight = (a.first == b.first && b.first == c.first) || (a.second == b.second && b.second == c.second);
    if (!straight) corners.push_back({xcoord[static_cast<std::size_t>(b.first)], ycoord[static_cast<std::size_t>(b.second)]});
  }
  // Shift so the polygon touches the axes.
  Coord minx = corners[0].x, miny = corners[0].y;
  for (const Point& p : corners) {
    minx = std::min(minx, p.x);
    miny = std::min(miny, p.y);
  }
  for (Point& p : corners) p = {p.x - minx, p.y - miny};
  return validate_polygon(std::move(corners));
}

}  // namespace ramify
