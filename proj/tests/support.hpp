#pragma once

// Helpers shared by the test binaries: graph enumeration and small
// independent oracles written without any library machinery.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

#include "ramify/graph.hpp"

namespace ramify::naive {

/// Pairs (u, v), u < v, in the order used by the bitmask encoding.
inline std::vector<Edge> all_pairs(std::size_t n) {
  std::vector<Edge> pairs;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) pairs.push_back({u, v});
  }
  return pairs;
}

inline Graph graph_from_mask(std::size_t n, std::uint64_t mask, const std::vector<Edge>& pairs) {
  std::vector<Edge> edges;
  for (std::size_t b = 0; b < pairs.size(); ++b) {
    if (mask >> b & 1) edges.push_back(pairs[b]);
  }
  return Graph(n, std::move(edges));
}

// Connectivity and bipartiteness straight from the mask (cheap filter for
// the big sweeps).
inline bool mask_connected(std::size_t n, std::uint64_t mask, const std::vector<Edge>& pairs) {
  std::uint32_t reach = 1;
  for (bool grew = true; grew;) {
    grew = false;
    for (std::size_t b = 0; b < pairs.size(); ++b) {
      if (!(mask >> b & 1)) continue;
      const std::uint32_t ub = 1u << pairs[b].u, vb = 1u << pairs[b].v;
      if (((reach & ub) != 0) != ((reach & vb) != 0)) {
        reach |= ub | vb;
        grew = true;
      }
    }
  }
  return reach == (n >= 32 ? ~0u : (1u << n) - 1);
}

inline bool mask_bipartite(std::size_t n, std::uint64_t mask, const std::vector<Edge>& pairs) {
  std::vector<int> color(n, -1);
  for (Vertex s = 0; s < n; ++s) {
    if (color[s] >= 0) continue;
    color[s] = 0;
    for (bool grew = true; grew;) {
      grew = false;
      for (std::size_t b = 0; b < pairs.size(); ++b) {
        if (!(mask >> b & 1)) continue;
        const int cu = color[pairs[b].u], cv = color[pairs[b].v];
        if (cu >= 0 && cv >= 0) {
          if (cu == cv) return false;
        } else if (cu >= 0) {
          color[pairs[b].v] = 1 - cu;
          grew = true;
        } else if (cv >= 0) {
          color[pairs[b].u] = 1 - cv;
          grew = true;
        }
      }
    }
  }
  return true;
}

/// Calls f(g) for every connected labeled graph on n vertices.
inline void for_each_connected_graph(std::size_t n, const std::function<void(const Graph&)>& f,
                                     bool bipartite_only = false) {
  const auto pairs = all_pairs(n);
  const std::uint64_t total = std::uint64_t{1} << pairs.size();
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    if (!mask_connected(n, mask, pairs)) continue;
    if (bipartite_only && !mask_bipartite(n, mask, pairs)) continue;
    f(graph_from_mask(n, mask, pairs));
  }
}

/// Floyd-Warshall over edge lengths.
inline std::vector<std::vector<Length>> floyd_warshall(const Graph& g) {
  const std::size_t n = g.vertex_count();
  constexpr Length inf = std::numeric_limits<Length>::max() / 4;
  std::vector<std::vector<Length>> d(n, std::vector<Length>(n, inf));
  for (std::size_t i = 0; i < n; ++i) d[i][i] = 0;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const Edge ed = g.edge(e);
    d[ed.u][ed.v] = d[ed.v][ed.u] = std::min(d[ed.u][ed.v], g.length(e));
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
    }
  }
  return d;
}

/// Quadratic LexBFS with full (untruncated) labels, choosing among maximal
/// labels the smallest vertex id. labels[v] lists the numbers of earlier
/// neighbors in increasing order.
struct NaiveLexBFS {
  std::vector<Vertex> order;
  std::vector<std::vector<std::size_t>> labels;
};

inline NaiveLexBFS naive_lexbfs(const Graph& g, Vertex root) {
  const std::size_t n = g.vertex_count();
  NaiveLexBFS r;
  r.labels.assign(n, {});
  std::vector<char> done(n, 0);
  // Lexicographic comparison on the sequence of numbers of earlier
  // neighbors, where earlier numbers rank higher.
  auto better = [&](Vertex a, Vertex b) {
    const auto& la = r.labels[a];
    const auto& lb = r.labels[b];
    for (std::size_t i = 0; i < std::min(la.size(), lb.size()); ++i) {
      if (la[i] != lb[i]) return la[i] < lb[i];
    }
    return la.size() > lb.size();
  };
  for (std::size_t step = 0; step < n; ++step) {
    Vertex pick = kNoVertex;
    if (step == 0) {
      pick = root;
    } else {
      for (Vertex v = 0; v < n; ++v) {
        if (!done[v] && (pick == kNoVertex || better(v, pick))) pick = v;
      }
    }
    done[pick] = 1;
    r.order.push_back(pick);
    for (const Vertex w : g.neighbors(pick)) {
      if (!done[w]) r.labels[w].push_back(step);
    }
  }
  return r;
}

}  // namespace ramify::naive
