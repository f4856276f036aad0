#pragma once

// Finite simple graphs with optional positive integer edge lengths, the text
// format they are exchanged in, and the elementary traversals (shortest-path
// distances, connectivity, bipartiteness) the rest of the library builds on.

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <istream>
#include <limits>
#include <optional>
#include <queue>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "ramify/detail/two_coloring.hpp"

namespace ramify {

using Vertex = std::uint32_t;
using EdgeId = std::uint32_t;
using Length = std::int64_t;

inline constexpr Vertex kNoVertex = std::numeric_limits<Vertex>::max();
inline constexpr EdgeId kNoEdge = std::numeric_limits<EdgeId>::max();
inline constexpr Length kUnreachable = std::numeric_limits<Length>::max();

/// Base class for every recoverable error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when an invariant that a successful earlier stage guarantees turns
/// out to be violated. Indicates a bug, never bad input.
class InternalDefect : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class GraphError : public Error {
 public:
  enum class Kind { kVertexOutOfRange, kSelfLoop, kDuplicateEdge, kNonPositiveLength, kLengthCount };

  GraphError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// Undirected edge, stored with u < v.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;
  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Immutable finite simple graph.
///
/// Adjacency is kept in compressed form with every neighbor list sorted by
/// vertex id. Each position in the adjacency array (a "slot") names one
/// endpoint of one edge; slot(e, x) maps back from an edge to its slot at x.
class Graph {
 public:
  Graph() { offsets_.push_back(0); }

  explicit Graph(std::size_t vertex_count) : Graph(vertex_count, {}, {}) {}

  /// Builds a graph on vertices [0, vertex_count). `lengths` is either empty
  /// (unit lengths) or holds one positive length per edge. Edge order is
  /// preserved; each edge is normalized to u < v.
  Graph(std::size_t vertex_count, std::vector<Edge> edges, std::vector<Length> lengths = {})
      : n_(vertex_count), edges_(std::move(edges)), lengths_(std::move(lengths)) {
    if (n_ >= kNoVertex) throw GraphError(GraphError::Kind::kVertexOutOfRange, "too many vertices");
    if (edges_.size() >= (std::size_t{1} << 31)) throw GraphError(GraphError::Kind::kVertexOutOfRange, "too many edges");
    if (!lengths_.empty() && lengths_.size() != edges_.size()) {
      throw GraphError(GraphError::Kind::kLengthCount, "edge length count does not match edge count");
    }
    for (std::size_t e = 0; e < edges_.size(); ++e) {
      Edge& edge = edges_[e];
      if (edge.u >= n_ || edge.v >= n_) {
        throw GraphError(GraphError::Kind::kVertexOutOfRange,
                         "edge " + std::to_string(e) + " has an endpoint outside [0, n)");
      }
      if (edge.u == edge.v) {
        throw GraphError(GraphError::Kind::kSelfLoop, "self-loop on vertex " + std::to_string(edge.u));
      }
      if (edge.u > edge.v) std::swap(edge.u, edge.v);
      if (!lengths_.empty() && lengths_[e] <= 0) {
        throw GraphError(GraphError::Kind::kNonPositiveLength,
                         "edge " + std::to_string(e) + " has a nonpositive length");
      }
    }
    build_adjacency();
  }

  std::size_t vertex_count() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }
  bool weighted() const { return !lengths_.empty(); }

  std::span<const Edge> edges() const { return edges_; }
  const Edge& edge(EdgeId e) const { return edges_[e]; }
  Length length(EdgeId e) const { return lengths_.empty() ? 1 : lengths_[e]; }
  std::span<const Length> lengths() const { return lengths_; }

  std::span<const Vertex> neighbors(Vertex x) const {
    return {adj_.data() + offsets_[x], adj_.data() + offsets_[x + 1]};
  }
  std::span<const EdgeId> incident_edges(Vertex x) const {
    return {adj_edge_.data() + offsets_[x], adj_edge_.data() + offsets_[x + 1]};
  }
  std::size_t degree(Vertex x) const { return offsets_[x + 1] - offsets_[x]; }

  std::size_t slot_count() const { return adj_.size(); }
  std::size_t first_slot(Vertex x) const { return offsets_[x]; }
  std::size_t slot(EdgeId e, Vertex at) const { return edge_slot_[2 * e + (edges_[e].u == at ? 0 : 1)]; }
  EdgeId slot_edge(std::size_t s) const { return adj_edge_[s]; }

  Vertex other(EdgeId e, Vertex x) const { return edges_[e].u == x ? edges_[e].v : edges_[e].u; }

  std::optional<EdgeId> find_edge(Vertex a, Vertex b) const {
    if (a >= n_ || b >= n_) return std::nullopt;
    const auto nb = neighbors(a);
    const auto it = std::lower_bound(nb.begin(), nb.end(), b);
    if (it == nb.end() || *it != b) return std::nullopt;
    return adj_edge_[offsets_[a] + static_cast<std::size_t>(it - nb.begin())];
  }
  bool adjacent(Vertex a, Vertex b) const { return find_edge(a, b).has_value(); }

 private:
  // Two counting passes give every neighbor list in ascending order.
  void build_adjacency() {
    offsets_.assign(n_ + 1, 0);
    for (const Edge& e : edges_) {
      ++offsets_[e.u + 1];
      ++offsets_[e.v + 1];
    }
    for (std::size_t i = 0; i < n_; ++i) offsets_[i + 1] += offsets_[i];

    std::vector<EdgeId> unsorted(2 * edges_.size());
    {
      std::vector<std::uint32_t> fill(offsets_.begin(), offsets_.end() - 1);
      for (EdgeId e = 0; e < edges_.size(); ++e) {
        unsorted[fill[edges_[e].u]++] = e;
        unsorted[fill[edges_[e].v]++] = e;
      }
    }
    adj_.resize(2 * edges_.size());
    adj_edge_.resize(2 * edges_.size());
    edge_slot_.resize(2 * edges_.size());
    std::vector<std::uint32_t> fill(offsets_.begin(), offsets_.end() - 1);
    for (Vertex target = 0; target < n_; ++target) {
      for (std::size_t i = offsets_[target]; i < offsets_[target + 1]; ++i) {
        const EdgeId e = unsorted[i];
        const Vertex source = other(e, target);
        const std::uint32_t s = fill[source]++;
        if (s > offsets_[source] && adj_[s - 1] == target) {
          throw GraphError(GraphError::Kind::kDuplicateEdge, "duplicate edge " + std::to_string(source) + " " +
                                                                 std::to_string(target));
        }
        adj_[s] = target;
        adj_edge_[s] = e;
        edge_slot_[2 * e + (edges_[e].u == source ? 0 : 1)] = s;
      }
    }
  }

  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<Length> lengths_;
  // Slot indices fit in 32 bits; the constructor rejects larger graphs.
  std::vector<std::uint32_t> offsets_;
  std::vector<Vertex> adj_;
  std::vector<EdgeId> adj_edge_;
  std::vector<std::uint32_t> edge_slot_;
};

// ---------------------------------------------------------------------------
// Text format

class ParseError : public Error {
 public:
  enum class Kind { kMalformed, kSelfLoop, kDuplicateEdge, kNonPositiveWeight };

  ParseError(Kind kind, std::size_t line, const std::string& detail)
      : Error("line " + std::to_string(line) + ": " + detail), kind_(kind), line_(line) {}

  Kind kind() const { return kind_; }
  std::size_t line() const { return line_; }

 private:
  Kind kind_;
  std::size_t line_;
};

/// A parsed graph together with the compaction map from dense ids back to the
/// ids that appeared in the file (ascending, so the map is deterministic).
struct ParsedGraph {
  Graph graph;
  std::vector<std::uint64_t> original_ids;
  bool tree_header = false;

  std::optional<Vertex> vertex_of(std::uint64_t original) const {
    const auto it = std::lower_bound(original_ids.begin(), original_ids.end(), original);
    if (it == original_ids.end() || *it != original) return std::nullopt;
    return static_cast<Vertex>(it - original_ids.begin());
  }
};

namespace detail {

inline std::vector<std::string_view> split_tokens(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) tokens.push_back(line.substr(start, i - start));
  }
  return tokens;
}

struct PairHash {
  std::size_t operator()(const std::pair<std::uint64_t, std::uint64_t>& p) const {
    return std::hash<std::uint64_t>{}(p.first * 0x9e3779b97f4a7c15ULL ^ p.second);
  }
};

template <class Int>
std::optional<Int> parse_int(std::string_view token) {
  Int value{};
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size()) return std::nullopt;
  return value;
}

}  // namespace detail

/// Reads the graph text format:
///
///   optional header line `weighted` (or `tree`, which implies weights);
///   `u v` or, when weighted, `u v w` per edge;
///   `vertex u` declares a vertex that may be isolated;
///   `#` starts a comment.
///
/// Vertex ids are nonnegative integers and need not be contiguous; they are
/// compacted to [0, n) in ascending order.
inline ParsedGraph parse_graph(std::istream& in) {
  using K = ParseError::Kind;
  struct RawEdge {
    std::uint64_t u, v;
    Length w;
  };
  std::vector<RawEdge> raw;
  std::vector<std::uint64_t> ids;
  std::unordered_set<std::pair<std::uint64_t, std::uint64_t>, detail::PairHash> seen_pairs;
  bool weighted = false;
  bool tree = false;
  bool first = true;

  std::string text;
  std::size_t line_no = 0;
  while (std::getline(in, text)) {
    ++line_no;
    std::string_view line(text);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const auto tok = detail::split_tokens(line);
    if (tok.empty()) continue;

    if (first) {
      first = false;
      if (tok.size() == 1 && tok[0] == "weighted") {
        weighted = true;
        continue;
      }
      if (tok.size() == 1 && tok[0] == "tree") {
        weighted = tree = true;
        continue;
      }
    }

    if (tok[0] == "vertex") {
      if (tok.size() != 2) throw ParseError(K::kMalformed, line_no, "expected `vertex <id>`");
      const auto id = detail::parse_int<std::uint64_t>(tok[1]);
      if (!id) throw ParseError(K::kMalformed, line_no, "bad vertex id `" + std::string(tok[1]) + "`");
      ids.push_back(*id);
      continue;
    }

    const std::size_t expected = weighted ? 3 : 2;
    if (tok.size() != expected) {
      throw ParseError(K::kMalformed, line_no,
                       weighted ? "expected `u v w`" : "expected `u v` (add a `weighted` header for lengths)");
    }
    const auto u = detail::parse_int<std::uint64_t>(tok[0]);
    const auto v = detail::parse_int<std::uint64_t>(tok[1]);
    if (!u || !v) throw ParseError(K::kMalformed, line_no, "vertex ids must be nonnegative integers");
    Length w = 1;
    if (weighted) {
      const auto parsed = detail::parse_int<Length>(tok[2]);
      if (!parsed) throw ParseError(K::kMalformed, line_no, "bad edge length `" + std::string(tok[2]) + "`");
      if (*parsed <= 0) throw ParseError(K::kNonPositiveWeight, line_no, "edge length must be positive");
      w = *parsed;
    }
    if (*u == *v) throw ParseError(K::kSelfLoop, line_no, "self-loop on vertex " + std::to_string(*u));
    const auto lo = std::min(*u, *v);
    const auto hi = std::max(*u, *v);
    if (!seen_pairs.insert({lo, hi}).second) {
      throw ParseError(K::kDuplicateEdge, line_no, "duplicate edge " + std::to_string(*u) + " " + std::to_string(*v));
    }
    raw.push_back({*u, *v, w});
    ids.push_back(*u);
    ids.push_back(*v);
  }

  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  auto dense = [&](std::uint64_t id) {
    return static_cast<Vertex>(std::lower_bound(ids.begin(), ids.end(), id) - ids.begin());
  };

  std::vector<Edge> edges;
  std::vector<Length> lengths;
  edges.reserve(raw.size());
  for (const RawEdge& r : raw) {
    edges.push_back({dense(r.u), dense(r.v)});
    if (weighted) lengths.push_back(r.w);
  }
  const std::size_t n = ids.size();
  return ParsedGraph{Graph(n, std::move(edges), std::move(lengths)), std::move(ids), tree};
}

inline ParsedGraph parse_graph(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_graph(in);
}

/// Writes `g` in the graph text format. Isolated vertices are declared with
/// `vertex` lines so the vertex set round-trips. With `header == "tree"` every
/// edge carries its length.
inline std::string format_graph(const Graph& g, std::string_view header = {}) {
  std::ostringstream out;
  const bool with_lengths = g.weighted() || header == "tree" || header == "weighted";
  if (!header.empty()) {
    out << header << '\n';
  } else if (with_lengths) {
    out << "weighted\n";
  }
  for (Vertex x = 0; x < g.vertex_count(); ++x) {
    if (g.degree(x) == 0) out << "vertex " << x << '\n';
  }
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    out << g.edge(e).u << ' ' << g.edge(e).v;
    if (with_lengths) out << ' ' << g.length(e);
    out << '\n';
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Traversals

enum class Metric {
  kAuto,  // edge lengths when the graph is weighted, hop count otherwise
  kHops,  // always hop count
};

/// Shortest-path distances from `source`; unreachable vertices get
/// kUnreachable. Hop counts use breadth-first search, lengths use Dijkstra.
inline std::vector<Length> bfs_distances(const Graph& g, Vertex source, Metric metric = Metric::kAuto) {
  std::vector<Length> dist(g.vertex_count(), kUnreachable);
  if (source >= g.vertex_count()) throw std::out_of_range("bfs_distances: unknown source vertex");
  dist[source] = 0;
  if (!g.weighted() || metric == Metric::kHops) {
    std::vector<Vertex> queue{source};
    queue.reserve(g.vertex_count());
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const Vertex u = queue[head];
      for (const Vertex v : g.neighbors(u)) {
        if (dist[v] == kUnreachable) {
          dist[v] = dist[u] + 1;
          queue.push_back(v);
        }
      }
    }
    return dist;
  }
  using Item = std::pair<Length, Vertex>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  heap.push({0, source});
  while (!heap.empty()) {
    const auto [d, u] = heap.top();
    heap.pop();
    if (d != dist[u]) continue;
    const auto nb = g.neighbors(u);
    const auto inc = g.incident_edges(u);
    for (std::size_t i = 0; i < nb.size(); ++i) {
      const Length candidate = d + g.length(inc[i]);
      if (candidate < dist[nb[i]]) {
        dist[nb[i]] = candidate;
        heap.push({candidate, nb[i]});
      }
    }
  }
  return dist;
}

struct Components {
  std::vector<std::uint32_t> component;  // per vertex, numbered by smallest member
  std::size_t count = 0;
};

inline Components components(const Graph& g) {
  Components result;
  result.component.assign(g.vertex_count(), std::numeric_limits<std::uint32_t>::max());
  std::vector<Vertex> stack;
  for (Vertex s = 0; s < g.vertex_count(); ++s) {
    if (result.component[s] != std::numeric_limits<std::uint32_t>::max()) continue;
    const auto id = static_cast<std::uint32_t>(result.count++);
    result.component[s] = id;
    stack.push_back(s);
    while (!stack.empty()) {
      const Vertex u = stack.back();
      stack.pop_back();
      for (const Vertex v : g.neighbors(u)) {
        if (result.component[v] == std::numeric_limits<std::uint32_t>::max()) {
          result.component[v] = id;
          stack.push_back(v);
        }
      }
    }
  }
  return result;
}

/// The graph with no vertices is not considered connected.
inline bool is_connected(const Graph& g) { return g.vertex_count() > 0 && components(g).count == 1; }

/// Either a proper 2-coloring (`coloring`) or an odd cycle given as a vertex
/// sequence whose consecutive members, and last and first, are adjacent.
struct Bipartition {
  std::optional<std::vector<std::uint8_t>> coloring;
  std::vector<Vertex> odd_cycle;

  bool bipartite() const { return coloring.has_value(); }
};

inline Bipartition is_bipartite(const Graph& g) {
  auto tc = detail::two_color(g.vertex_count(), [&](std::uint32_t u, auto&& visit) {
    for (const Vertex v : g.neighbors(u)) visit(v);
  });
  Bipartition result;
  if (tc.ok()) {
    result.coloring = std::move(tc.side);
  } else {
    result.odd_cycle.assign(tc.odd_cycle.begin(), tc.odd_cycle.end());
  }
  return result;
}

}  // namespace ramify
