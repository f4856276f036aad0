#pragma once

// The square complex of a network: its vertices, its edges with their
// lengths, and one rectangular 2-cell per listed square.

#include <algorithm>
#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ramify/factorization.hpp"
#include "ramify/graph.hpp"
#include "ramify/recognition.hpp"

namespace ramify {

/// A square cell seen from its smallest-id corner: the two cell edges at that
/// corner (in ascending edge id) and the corner diagonally across.
struct CellFrame {
  Vertex base = kNoVertex;
  std::array<EdgeId, 2> sides{kNoEdge, kNoEdge};
  Vertex opposite = kNoVertex;
};

inline CellFrame cell_frame(const Square& s) {
  const std::array<Vertex, 4> corner = s.cycle();        // last, y, w, z
  const std::array<EdgeId, 4> edge = s.cycle_edges();    // last-y, y-w, w-z, z-last
  const std::size_t i = static_cast<std::size_t>(std::min_element(corner.begin(), corner.end()) - corner.begin());
  CellFrame f;
  f.base = corner[i];
  f.sides = {edge[i], edge[(i + 3) % 4]};
  if (f.sides[0] > f.sides[1]) std::swap(f.sides[0], f.sides[1]);
  f.opposite = corner[(i + 2) % 4];
  return f;
}

struct CellComplex {
  Graph network;
  std::vector<Square> cells;
  LinkSet links;
};

/// Builds the complex of `g`. The graph must be connected and bipartite and
/// pass the label checks, so that the squares are well defined; links may
/// still fail to be bipartite, which check_ramified reports. Throws
/// NotPartialDoubleTreeError otherwise, and WeightMismatchError when a square
/// has opposite sides of different lengths.
inline CellComplex complex_from_network(const Graph& g) {
  RecognitionReport report = recognize(g);
  if (!report.links) {
    throw NotPartialDoubleTreeError(*report.witness, std::string(witness_kind(*report.witness)));
  }
  for (const Square& s : report.squares) {
    if (g.length(s.last_y) != g.length(s.z_w)) throw WeightMismatchError(0, s.last_y, s.z_w);
    if (g.length(s.last_z) != g.length(s.y_w)) throw WeightMismatchError(0, s.last_z, s.y_w);
  }
  return CellComplex{g, std::move(report.squares), std::move(*report.links)};
}

struct RamifiedReport {
  bool ramified = false;
  std::vector<char> link_bipartite;  // per vertex
  std::optional<OddLinkCycle> witness;
};

/// True iff every vertex link of the complex is bipartite.
inline RamifiedReport check_ramified(const CellComplex& c) {
  RamifiedReport r;
  r.link_bipartite.resize(c.network.vertex_count());
  for (Vertex x = 0; x < c.network.vertex_count(); ++x) {
    r.link_bipartite[x] = c.links.link_bipartite(c.network, x) ? 1 : 0;
  }
  r.witness = c.links.odd_cycle();
  r.ramified = !r.witness.has_value();
  return r;
}

}  // namespace ramify
