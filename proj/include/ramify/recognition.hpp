#pragma once

// Linear-time recognition of partial double trees (graphs that embed
// isometrically into the Cartesian product of two trees).
//
// Pipeline, aborting at the first failed stage:
//   1. connectivity and bipartiteness;
//   2. LexBFS labels: every label has at most two entries, a two-entry label
//      (y, z) has |L(y) ∩ L(z)| = 1, and no two consecutive vertices carry the
//      same two-entry label;
//   3. one square per two-entry label, then the link of every vertex (its
//      incident edges, adjacent when they share a square) must be bipartite.

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include "ramify/detail/two_coloring.hpp"
#include "ramify/graph.hpp"
#include "ramify/lexbfs.hpp"

namespace ramify {

/// The 4-cycle last–y–w–z–last closed by a vertex whose label is (y, z);
/// w is the single common label entry of y and z. `last` is numbered after the
/// other three and w before them.
struct Square {
  Vertex last = kNoVertex;
  Vertex y = kNoVertex;
  Vertex z = kNoVertex;
  Vertex w = kNoVertex;
  EdgeId last_y = kNoEdge;
  EdgeId last_z = kNoEdge;
  EdgeId y_w = kNoEdge;
  EdgeId z_w = kNoEdge;

  std::array<Vertex, 4> cycle() const { return {last, y, w, z}; }
  std::array<EdgeId, 4> cycle_edges() const { return {last_y, y_w, z_w, last_z}; }
};

// ---------------------------------------------------------------------------
// Failure witnesses

struct NotConnected {
  Vertex reached = kNoVertex;    // kNoVertex for the empty graph
  Vertex unreached = kNoVertex;
};
struct NotBipartite {
  std::vector<Vertex> odd_cycle;
};
struct LabelTooLarge {
  Vertex vertex = kNoVertex;
};
struct BadLabelIntersection {
  Vertex vertex = kNoVertex;
  Vertex y = kNoVertex;
  Vertex z = kNoVertex;
  std::size_t common = 0;
};
/// Two vertices with the same two-entry label; adjacent in the order for
/// LexBFS, anywhere in the order for the BFS fallback.
struct ConsecutiveEqualLabels {
  Vertex first = kNoVertex;
  Vertex second = kNoVertex;
};
struct OddLinkCycle {
  Vertex vertex = kNoVertex;
  std::vector<EdgeId> cycle;  // incident edges of `vertex`, cyclically adjacent in its link
};

using Witness =
    std::variant<NotConnected, NotBipartite, LabelTooLarge, BadLabelIntersection, ConsecutiveEqualLabels, OddLinkCycle>;

inline std::string_view witness_kind(const Witness& w) {
  static constexpr std::array<std::string_view, 6> kNames = {
      "NotConnected", "NotBipartite", "LabelTooLarge", "BadLabelIntersection", "ConsecutiveEqualLabels",
      "OddLinkCycle"};
  return kNames[w.index()];
}

/// Space-separated witness data. Vertex ids go through `name`; the edges of an
/// odd link cycle are written as their far endpoints.
inline std::string witness_data(const Graph& g, const Witness& w,
                                const std::function<std::string(Vertex)>& name = [](Vertex v) {
                                  return std::to_string(v);
                                }) {
  std::ostringstream out;
  auto put = [&](Vertex v) {
    if (out.tellp() > 0) out << ' ';
    out << (v == kNoVertex ? std::string("-") : name(v));
  };
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, NotConnected>) {
          put(x.reached);
          put(x.unreached);
        } else if constexpr (std::is_same_v<T, NotBipartite>) {
          for (const Vertex v : x.odd_cycle) put(v);
        } else if constexpr (std::is_same_v<T, LabelTooLarge>) {
          put(x.vertex);
        } else if constexpr (std::is_same_v<T, BadLabelIntersection>) {
          put(x.vertex);
          put(x.y);
          put(x.z);
          out << ' ' << x.common;
        } else if constexpr (std::is_same_v<T, ConsecutiveEqualLabels>) {
          put(x.first);
          put(x.second);
        } else {
          put(x.vertex);
          for (const EdgeId e : x.cycle) put(g.other(e, x.vertex));
        }
      },
      w);
  return out.str();
}

enum class OrderMode {
  kLexBFS,  // consecutive-equal-labels test on adjacent positions
  kBFS,     // plain BFS order; equal two-entry labels are rejected globally
};

inline LexBFSOrder make_recognition_order(const Graph& g, OrderMode mode) {
  return mode == OrderMode::kLexBFS ? lexbfs(g, 0) : bfs_order(g, 0);
}

namespace detail {

inline std::size_t label_intersection(std::span<const Vertex> a, std::span<const Vertex> b, Vertex* common) {
  std::size_t count = 0;
  for (const Vertex x : a) {
    for (const Vertex y : b) {
      if (x == y) {
        if (count == 0 && common) *common = x;
        ++count;
      }
    }
  }
  return count;
}

inline std::uint64_t pair_key(Vertex a, Vertex b) { return (std::uint64_t{a} << 32) | b; }

}  // namespace detail

/// Checks the three label conditions in numbering order and returns the
/// first violation, or nothing when the order is strongly dismantlable.
inline std::optional<Witness> check_labels(const Graph& g, const LexBFSOrder& o,
                                           OrderMode mode = OrderMode::kLexBFS) {
  (void)g;
  std::unordered_map<std::uint64_t, Vertex> seen;  // BFS mode only
  for (std::size_t i = 0; i < o.size(); ++i) {
    const Vertex x = o.order[i];
    const auto label = o.label(x);
    if (label.size() >= 3) return LabelTooLarge{x};
    if (label.size() != 2) continue;

    const Vertex y = label[0];
    const Vertex z = label[1];
    // y and z precede x, so their labels already passed the size check.
    const std::size_t common = detail::label_intersection(o.label(y), o.label(z), nullptr);
    if (common != 1) return BadLabelIntersection{x, y, z, common};

    if (mode == OrderMode::kLexBFS) {
      if (i > 0) {
        const Vertex prev = o.order[i - 1];
        const auto pl = o.label(prev);
        if (pl.size() == 2 && pl[0] == y && pl[1] == z) return ConsecutiveEqualLabels{prev, x};
      }
    } else {
      const auto [it, fresh] = seen.emplace(detail::pair_key(y, z), x);
      if (!fresh) return ConsecutiveEqualLabels{it->second, x};
    }
  }
  return std::nullopt;
}

/// One square per vertex with a two-entry label, by increasing id of that
/// vertex. Assumes check_labels passed.
inline std::vector<Square> list_squares(const Graph& g, const LexBFSOrder& o) {
  (void)g;
  std::vector<Square> squares;
  for (Vertex x = 0; x < o.size(); ++x) {
    if (o.label_size(x) != 2) continue;
    Square s;
    s.last = x;
    s.y = o.labels[x].vertices[0];
    s.z = o.labels[x].vertices[1];
    if (detail::label_intersection(o.label(s.y), o.label(s.z), &s.w) != 1) {
      throw InternalDefect("list_squares: labels were not checked");
    }
    s.last_y = o.labels[x].edges[0];
    s.last_z = o.labels[x].edges[1];
    s.y_w = o.label_edge(s.y, s.w);
    s.z_w = o.label_edge(s.z, s.w);
    squares.push_back(s);
  }
  return squares;
}

/// The link of one vertex, materialized. Vertices are the incident edges of
/// `owner` in adjacency order; edges are pairs of local indices.
struct LinkGraph {
  Vertex owner = kNoVertex;
  std::vector<EdgeId> vertices;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  std::optional<std::vector<std::uint8_t>> bipartition;
  bool connected = true;
};

/// Links of all vertices at once, held as a union-find with parity over the
/// adjacency slots of the graph (one slot per edge endpoint). At each corner a
/// square joins the slots of its two edges there with odd parity; a link is
/// bipartite when no class of its slots closes an even-parity cycle.
/// Near-linear in |E| + #squares.
class LinkSet {
 public:
  LinkSet() = default;

  LinkSet(const Graph& g, std::span<const Square> squares) {
    const std::size_t slots = g.slot_count();
    parent_.resize(slots);
    for (std::uint32_t i = 0; i < slots; ++i) parent_[i] = i;
    bits_.assign(slots, 0);
    for (const Square& s : squares) {
      for_each_corner(g, s, [&](Vertex, std::size_t a, std::size_t b) {
        unite(static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b));
      });
    }
    // Flatten, so every slot points straight at its root.
    bool odd = false;
    for (std::uint32_t i = 0; i < slots; ++i) odd |= (bits_[find(i).first] & kOdd) != 0;
    if (!odd) return;
    for (Vertex x = 0; x < g.vertex_count(); ++x) {
      if (link_bipartite(g, x)) continue;
      const LinkGraph lg = link(g, squares, x);
      const auto tc = color(lg);
      OddLinkCycle w;
      w.vertex = x;
      for (const std::uint32_t i : tc.odd_cycle) w.cycle.push_back(lg.vertices[i]);
      odd_ = std::move(w);
      break;
    }
  }

  /// True when every link is bipartite.
  bool bipartite() const { return !odd_.has_value(); }

  /// Odd cycle in the link of the smallest vertex with a non-bipartite link.
  const std::optional<OddLinkCycle>& odd_cycle() const { return odd_; }

  bool link_bipartite(const Graph& g, Vertex x) const {
    for (std::size_t s = g.first_slot(x); s < g.first_slot(x) + g.degree(x); ++s) {
      if (bits_[parent_[s]] & kOdd) return false;
    }
    return true;
  }

  bool link_connected(const Graph& g, Vertex x) const {
    const std::size_t first = g.first_slot(x);
    for (std::size_t s = first; s < first + g.degree(x); ++s) {
      if (parent_[s] != parent_[first]) return false;
    }
    return true;
  }

  /// The link of x, built from the squares this set was made from. Scans the
  /// square list once.
  LinkGraph link(const Graph& g, std::span<const Square> squares, Vertex x) const {
    LinkGraph lg;
    lg.owner = x;
    const std::size_t first = g.first_slot(x);
    const auto inc = g.incident_edges(x);
    lg.vertices.assign(inc.begin(), inc.end());
    for (const Square& s : squares) {
      for_each_corner(g, s, [&](Vertex v, std::size_t a, std::size_t b) {
        if (v != x) return;
        const auto i = static_cast<std::uint32_t>(a - first), j = static_cast<std::uint32_t>(b - first);
        lg.edges.emplace_back(std::min(i, j), std::max(i, j));
      });
    }
    std::sort(lg.edges.begin(), lg.edges.end());
    lg.edges.erase(std::unique(lg.edges.begin(), lg.edges.end()), lg.edges.end());
    auto tc = color(lg);
    if (tc.ok()) lg.bipartition = std::move(tc.side);
    lg.connected = link_connected(g, x);
    return lg;
  }

 private:
  static constexpr std::uint8_t kParity = 1;  // parity to the parent
  static constexpr std::uint8_t kOdd = 2;     // on roots: the class is not bipartite
  static constexpr std::uint8_t kRankStep = 4;

  // f(corner, slot, slot) for the two square edges at each corner.
  template <class F>
  static void for_each_corner(const Graph& g, const Square& s, F&& f) {
    f(s.last, g.slot(s.last_y, s.last), g.slot(s.last_z, s.last));
    f(s.y, g.slot(s.last_y, s.y), g.slot(s.y_w, s.y));
    f(s.w, g.slot(s.y_w, s.w), g.slot(s.z_w, s.w));
    f(s.z, g.slot(s.z_w, s.z), g.slot(s.last_z, s.z));
  }

  static detail::TwoColoring color(const LinkGraph& lg) {
    std::vector<std::vector<std::uint32_t>> adj(lg.vertices.size());
    for (const auto& [i, j] : lg.edges) {
      adj[i].push_back(j);
      adj[j].push_back(i);
    }
    return detail::two_color(adj.size(), [&](std::uint32_t u, auto&& visit) {
      for (const std::uint32_t v : adj[u]) visit(v);
    });
  }

  // Root of s and the parity of s relative to it, compressing the path.
  std::pair<std::uint32_t, std::uint8_t> find(std::uint32_t s) {
    std::uint32_t r = s;
    std::uint8_t p = 0;
    while (parent_[r] != r) {
      p ^= bits_[r] & kParity;
      r = parent_[r];
    }
    std::uint8_t px = p;
    for (std::uint32_t x = s; x != r;) {
      const std::uint32_t next = parent_[x];
      const std::uint8_t pnext = px ^ (bits_[x] & kParity);
      parent_[x] = r;
      bits_[x] = static_cast<std::uint8_t>((bits_[x] & ~kParity) | px);
      x = next;
      px = pnext;
    }
    return {r, p};
  }

  void unite(std::uint32_t a, std::uint32_t b) {
    auto [ra, pa] = find(a);
    auto [rb, pb] = find(b);
    if (ra == rb) {
      if (pa == pb) bits_[ra] |= kOdd;
      return;
    }
    if (bits_[ra] / kRankStep < bits_[rb] / kRankStep) {
      std::swap(ra, rb);
      std::swap(pa, pb);
    }
    parent_[rb] = ra;
    bits_[rb] = static_cast<std::uint8_t>((bits_[rb] & ~kParity) | (pa ^ pb ^ 1));
    bits_[ra] |= bits_[rb] & kOdd;
    if (bits_[ra] / kRankStep == bits_[rb] / kRankStep) bits_[ra] += kRankStep;
  }

  std::vector<std::uint32_t> parent_;
  std::vector<std::uint8_t> bits_;  // parity bit, odd flag, rank above
  std::optional<OddLinkCycle> odd_;
};

inline LinkSet build_links(const Graph& g, std::span<const Square> squares) { return LinkSet(g, squares); }

/// True when the link of every vertex is connected. A vertex without edges
/// has an empty link, which counts as connected.
inline bool links_all_connected(const Graph& g, const LinkSet& links) {
  for (Vertex x = 0; x < g.vertex_count(); ++x) {
    if (!links.link_connected(g, x)) return false;
  }
  return true;
}

struct RecognitionReport {
  std::optional<Witness> witness;  // empty on a yes verdict
  LexBFSOrder order;               // filled once the graph is connected and bipartite
  std::vector<Square> squares;     // filled once the labels pass
  std::optional<LinkSet> links;    // filled once the labels pass

  bool yes() const { return !witness.has_value(); }
  explicit operator bool() const { return yes(); }
};

/// Decides whether `g` is a partial double tree in O(|V| + |E|).
/// Graphs with one or two vertices are accepted when connected.
inline RecognitionReport recognize(const Graph& g, OrderMode mode = OrderMode::kLexBFS) {
  RecognitionReport report;
  const std::size_t n = g.vertex_count();
  if (n == 0) {
    report.witness = NotConnected{};
    return report;
  }
  // Connectivity and bipartiteness in one breadth-first pass from vertex 0;
  // the odd cycle is recovered only on failure.
  {
    std::vector<std::uint8_t> side(n, detail::kUncolored);
    std::vector<Vertex> queue;
    queue.reserve(n);
    queue.push_back(0);
    side[0] = 0;
    bool clash = false;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const Vertex u = queue[head];
      for (const Vertex v : g.neighbors(u)) {
        if (side[v] == detail::kUncolored) {
          side[v] = side[u] ^ 1;
          queue.push_back(v);
        } else {
          clash |= side[v] == side[u];
        }
      }
    }
    if (queue.size() < n) {
      const auto it = std::find(side.begin(), side.end(), detail::kUncolored);
      report.witness = NotConnected{0, static_cast<Vertex>(it - side.begin())};
      return report;
    }
    if (clash) {
      report.witness = NotBipartite{std::move(is_bipartite(g).odd_cycle)};
      return report;
    }
  }
  report.order = make_recognition_order(g, mode);
  if (auto w = check_labels(g, report.order, mode)) {
    report.witness = std::move(*w);
    return report;
  }
  report.squares = list_squares(g, report.order);
  report.links.emplace(g, report.squares);
  if (const auto& odd = report.links->odd_cycle()) report.witness = *odd;
  return report;
}

/// Re-checks a witness against the graph alone (recomputing the order where
/// the witness refers to labels). Linear in the size of the graph.
inline bool witness_holds(const Graph& g, const Witness& witness, OrderMode mode = OrderMode::kLexBFS) {
  const std::size_t n = g.vertex_count();
  auto valid = [&](Vertex v) { return v < n; };
  auto order = [&]() -> std::optional<LexBFSOrder> {
    try {
      return make_recognition_order(g, mode);
    } catch (const NotConnectedError&) {
      return std::nullopt;
    }
  };
  return std::visit(
      [&](const auto& w) -> bool {
        using T = std::decay_t<decltype(w)>;
        if constexpr (std::is_same_v<T, NotConnected>) {
          if (n == 0) return w.reached == kNoVertex && w.unreached == kNoVertex;
          if (!valid(w.reached) || !valid(w.unreached)) return false;
          return bfs_distances(g, w.reached, Metric::kHops)[w.unreached] == kUnreachable;
        } else if constexpr (std::is_same_v<T, NotBipartite>) {
          const auto& c = w.odd_cycle;
          if (c.size() % 2 == 0) return false;
          for (std::size_t i = 0; i < c.size(); ++i) {
            if (!valid(c[i]) || !g.adjacent(c[i], c[(i + 1) % c.size()])) return false;
          }
          return true;
        } else if constexpr (std::is_same_v<T, LabelTooLarge>) {
          const auto o = order();
          return o && valid(w.vertex) && o->label_size(w.vertex) >= 3;
        } else if constexpr (std::is_same_v<T, BadLabelIntersection>) {
          const auto o = order();
          if (!o || !valid(w.vertex)) return false;
          const auto l = o->label(w.vertex);
          if (l.size() != 2 || l[0] != w.y || l[1] != w.z) return false;
          return w.common != 1 && detail::label_intersection(o->label(w.y), o->label(w.z), nullptr) == w.common;
        } else if constexpr (std::is_same_v<T, ConsecutiveEqualLabels>) {
          const auto o = order();
          if (!o || !valid(w.first) || !valid(w.second) || w.first == w.second) return false;
          const auto a = o->label(w.first);
          const auto b = o->label(w.second);
          if (a.size() != 2 || b.size() != 2 || a[0] != b[0] || a[1] != b[1]) return false;
          if (mode == OrderMode::kLexBFS) return o->position[w.second] == o->position[w.first] + 1;
          return o->position[w.first] < o->position[w.second];
        } else {
          const auto& c = w.cycle;
          if (!valid(w.vertex) || c.size() < 3 || c.size() % 2 == 0) return false;
          std::vector<char> mark(n, 0);
          for (std::size_t i = 0; i < c.size(); ++i) {
            if (c[i] >= g.edge_count()) return false;
            const Edge& e = g.edge(c[i]);
            if (e.u != w.vertex && e.v != w.vertex) return false;
          }
          // Consecutive edges x-a, x-b must close a 4-cycle x-a-q-b.
          for (std::size_t i = 0; i < c.size(); ++i) {
            const Vertex a = g.other(c[i], w.vertex);
            const Vertex b = g.other(c[(i + 1) % c.size()], w.vertex);
            if (a == b) return false;
            for (const Vertex q : g.neighbors(a)) mark[q] = 1;
            bool closes = false;
            for (const Vertex q : g.neighbors(b)) closes = closes || (q != w.vertex && mark[q]);
            for (const Vertex q : g.neighbors(a)) mark[q] = 0;
            if (!closes) return false;
          }
          return true;
        }
      },
      witness);
}

}  // namespace ramify
