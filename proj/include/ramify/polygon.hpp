#pragma once

// Simple rectilinear polygons with integer corners, their grid lines, the
// grid network N(P) and exact l1 geodesic distances inside P.

#include <algorithm>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ramify/graph.hpp"
#include "ramify/oracle.hpp"

namespace ramify {

using Coord = std::int64_t;

struct Point {
  Coord x = 0;
  Coord y = 0;
  auto operator<=>(const Point&) const = default;
};

class PolygonError : public Error {
 public:
  enum class Kind { kMalformed, kTooFewCorners, kNotAxisParallel, kSelfIntersection };
  PolygonError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

class PointOutsideError : public Error {
 public:
  explicit PointOutsideError(Point p)
      : Error("point (" + std::to_string(p.x) + ", " + std::to_string(p.y) + ") is outside the polygon"), point_(p) {}
  Point point() const { return point_; }

 private:
  Point point_;
};

/// Corners in boundary order; the closing side is implicit.
struct RectPolygon {
  std::vector<Point> corners;

  std::size_t size() const { return corners.size(); }
  Point corner(std::size_t i) const { return corners[i % corners.size()]; }
};

namespace detail {

struct Side {
  Point a, b;  // a <= b componentwise
  bool horizontal() const { return a.y == b.y; }
};

inline Side side_of(const RectPolygon& p, std::size_t i) {
  Point a = p.corner(i);
  Point b = p.corner(i + 1);
  if (b < a) std::swap(a, b);
  return {a, b};
}

inline bool sides_touch(const Side& s, const Side& t) {
  return std::max(s.a.x, t.a.x) <= std::min(s.b.x, t.b.x) && std::max(s.a.y, t.a.y) <= std::min(s.b.y, t.b.y);
}

}  // namespace detail

/// Checks the polygon invariants: at least 4 corners, nonzero sides
/// alternating between horizontal and vertical, and no two non-adjacent sides
/// meeting (O(k^2)).
inline RectPolygon validate_polygon(std::vector<Point> corners) {
  using K = PolygonError::Kind;
  RectPolygon p{std::move(corners)};
  const std::size_t k = p.size();
  if (k < 4) throw PolygonError(K::kTooFewCorners, "a polygon needs at least 4 corners");
  for (std::size_t i = 0; i < k; ++i) {
    const Point a = p.corner(i);
    const Point b = p.corner(i + 1);
    const Point c = p.corner(i + 2);
    if ((a.x == b.x) == (a.y == b.y)) {
      throw PolygonError(K::kNotAxisParallel, "side " + std::to_string(i) + " is not axis-parallel or has zero length");
    }
    if ((a.y == b.y) == (b.y == c.y)) {
      throw PolygonError(K::kNotAxisParallel, "sides " + std::to_string(i) + " and " + std::to_string((i + 1) % k) +
                                                  " do not alternate between horizontal and vertical");
    }
  }
  for (std::size_t i = 0; i < k; ++i) {
    const detail::Side s = detail::side_of(p, i);
    for (std::size_t j = i + 2; j < k; ++j) {
      if (i == 0 && j == k - 1) continue;
      if (detail::sides_touch(s, detail::side_of(p, j))) {
        throw PolygonError(K::kSelfIntersection,
                           "sides " + std::to_string(i) + " and " + std::to_string(j) + " intersect");
      }
    }
  }
  return p;
}

/// Reads `polygon k` followed by k lines `x y`. Blank lines and `#` comments
/// are skipped.
inline RectPolygon parse_polygon(std::istream& in) {
  using K = PolygonError::Kind;
  std::string raw;
  std::size_t line_no = 0;
  std::optional<std::size_t> declared;
  std::vector<Point> corners;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line(raw);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const auto tok = detail::split_tokens(line);
    if (tok.empty()) continue;
    const std::string where = "line " + std::to_string(line_no) + ": ";
    if (!declared) {
      const auto k = tok.size() == 2 && tok[0] == "polygon" ? detail::parse_int<std::uint64_t>(tok[1]) : std::nullopt;
      if (!k) throw PolygonError(K::kMalformed, where + "expected `polygon k`");
      declared = static_cast<std::size_t>(*k);
      continue;
    }
    const auto x = tok.size() == 2 ? detail::parse_int<Coord>(tok[0]) : std::nullopt;
    const auto y = tok.size() == 2 ? detail::parse_int<Coord>(tok[1]) : std::nullopt;
    if (!x || !y) throw PolygonError(K::kMalformed, where + "expected `x y`");
    if (corners.size() == *declared) throw PolygonError(K::kMalformed, where + "more corners than declared");
    corners.push_back({*x, *y});
  }
  if (!declared) throw PolygonError(K::kMalformed, "missing `polygon k` header");
  if (corners.size() != *declared) {
    throw PolygonError(K::kMalformed, "declared " + std::to_string(*declared) + " corners, found " +
                                          std::to_string(corners.size()));
  }
  return validate_polygon(std::move(corners));
}

inline RectPolygon parse_polygon(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_polygon(in);
}

inline std::string format_polygon(const RectPolygon& p) {
  std::string out = "polygon " + std::to_string(p.size()) + "\n";
  for (const Point& c : p.corners) out += std::to_string(c.x) + " " + std::to_string(c.y) + "\n";
  return out;
}

/// Multiplies every coordinate by `factor`.
inline RectPolygon scaled(const RectPolygon& p, Coord factor) {
  if (factor <= 0) throw std::invalid_argument("scale factor must be positive");
  RectPolygon q = p;
  for (Point& c : q.corners) c = {c.x * factor, c.y * factor};
  return q;
}

/// Boundary-inclusive point membership.
inline bool contains(const RectPolygon& p, Point q) {
  bool inside = false;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const detail::Side s = detail::side_of(p, i);
    if (s.a.x <= q.x && q.x <= s.b.x && s.a.y <= q.y && q.y <= s.b.y) return true;
    // Ray to +x, crossing vertical sides over the half-open span [a.y, b.y).
    if (!s.horizontal() && s.a.x > q.x && s.a.y <= q.y && q.y < s.b.y) inside = !inside;
  }
  return inside;
}

/// A maximal axis-parallel segment inside P through a corner (or, for
/// expanded networks, through a query point).
struct GridLine {
  bool horizontal = true;
  Coord at = 0;      // y for horizontal lines, x for vertical ones
  Coord from = 0;    // span along the line
  Coord to = 0;
  auto operator<=>(const GridLine&) const = default;
};

struct GridCell {
  Coord x0, y0, x1, y1;
  std::array<Vertex, 4> corners;  // (x0,y0), (x1,y0), (x1,y1), (x0,y1)
};

/// Grid lines, the grid network, its rectangular cells and vertex geometry.
/// Network vertices are numbered by (y, x).
struct GridArrangement {
  std::vector<GridLine> lines;
  Graph network;
  std::vector<Point> geometry;
  std::vector<GridCell> cells;

  std::optional<Vertex> vertex_at(Point p) const {
    const auto it = std::lower_bound(geometry.begin(), geometry.end(), p,
                                     [](const Point& a, const Point& b) { return std::pair{a.y, a.x} < std::pair{b.y, b.x}; });
    if (it == geometry.end() || *it != p) return std::nullopt;
    return static_cast<Vertex>(it - geometry.begin());
  }
};

namespace detail {

inline std::vector<Coord> compress(std::vector<Coord> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

inline std::size_t index_of(const std::vector<Coord>& v, Coord c) {
  return static_cast<std::size_t>(std::lower_bound(v.begin(), v.end(), c) - v.begin());
}

// Lines are the maximal in-polygon runs of each compressed row/column that
// contain a seed point. Works on the grid spanned by all corner and seed
// coordinates; every side of P lies on that grid, so each grid cell is
// entirely inside or entirely outside P.
inline GridArrangement arrange(const RectPolygon& p, const std::vector<Point>& seeds) {
  std::vector<Coord> xs, ys;
  for (const Point& c : seeds) {
    xs.push_back(c.x);
    ys.push_back(c.y);
  }
  xs = compress(std::move(xs));
  ys = compress(std::move(ys));
  const std::size_t nx = xs.size();
  const std::size_t ny = ys.size();

  // Cell (i, j) spans [xs[i], xs[i+1]] x [ys[j], ys[j+1]]. Inside-ness by a
  // vertical parity sweep over the horizontal sides.
  std::vector<char> inside((nx - 1) * ny, 0);
  auto cell = [&](std::size_t i, std::size_t j) -> char& { return inside[j * (nx - 1) + i]; };
  for (std::size_t s = 0; s < p.size(); ++s) {
    const Side side = side_of(p, s);
    if (!side.horizontal()) continue;
    const std::size_t j = index_of(ys, side.a.y);
    for (std::size_t i = index_of(xs, side.a.x); i < index_of(xs, side.b.x); ++i) cell(i, j) ^= 1;
  }
  for (std::size_t j = 1; j < ny; ++j) {
    for (std::size_t i = 0; i + 1 < nx; ++i) cell(i, j) ^= cell(i, j - 1);
  }
  auto cell_in = [&](std::ptrdiff_t i, std::ptrdiff_t j) {
    return i >= 0 && j >= 0 && static_cast<std::size_t>(i) + 1 < nx && static_cast<std::size_t>(j) + 1 < ny &&
           cell(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
  };
  // Unit segment from (i, j) to (i+1, j) / (i, j+1) lies in P.
  auto hseg = [&](std::size_t i, std::size_t j) {
    const auto a = static_cast<std::ptrdiff_t>(i), b = static_cast<std::ptrdiff_t>(j);
    return cell_in(a, b) || cell_in(a, b - 1);
  };
  auto vseg = [&](std::size_t i, std::size_t j) {
    const auto a = static_cast<std::ptrdiff_t>(i), b = static_cast<std::ptrdiff_t>(j);
    return cell_in(a, b) || cell_in(a - 1, b);
  };

  std::vector<char> seeded(nx * ny, 0);
  for (const Point& c : seeds) seeded[index_of(ys, c.y) * nx + index_of(xs, c.x)] = 1;

  GridArrangement arr;
  std::vector<char> on_h(nx * ny, 0), on_v(nx * ny, 0);
  for (std::size_t j = 0; j < ny; ++j) {
    std::size_t i = 0;
    while (i < nx) {
      std::size_t end = i;
      while (end + 1 < nx && hseg(end, j)) ++end;
      bool has_seed = false;
      for (std::size_t k = i; k <= end; ++k) has_seed |= seeded[j * nx + k] != 0;
      if (has_seed && end > i) {
        arr.lines.push_back({true, ys[j], xs[i], xs[end]});
        for (std::size_t k = i; k <= end; ++k) on_h[j * nx + k] = 1;
      } else if (has_seed) {
        for (std::size_t k = i; k <= end; ++k) on_h[j * nx + k] |= seeded[j * nx + k];
      }
      i = end + 1;
    }
  }
  for (std::size_t i = 0; i < nx; ++i) {
    std::size_t j = 0;
    while (j < ny) {
      std::size_t end = j;
      while (end + 1 < ny && vseg(i, end)) ++end;
      bool has_seed = false;
      for (std::size_t k = j; k <= end; ++k) has_seed |= seeded[k * nx + i] != 0;
      if (has_seed && end > j) {
        arr.lines.push_back({false, xs[i], ys[j], ys[end]});
        for (std::size_t k = j; k <= end; ++k) on_v[k * nx + i] = 1;
      } else if (has_seed) {
        for (std::size_t k = j; k <= end; ++k) on_v[k * nx + i] |= seeded[k * nx + i];
      }
      j = end + 1;
    }
  }
  std::sort(arr.lines.begin(), arr.lines.end());

  std::vector<Vertex> id(nx * ny, kNoVertex);
  for (std::size_t j = 0; j < ny; ++j) {
    for (std::size_t i = 0; i < nx; ++i) {
      if (on_h[j * nx + i] && on_v[j * nx + i]) {
        id[j * nx + i] = static_cast<Vertex>(arr.geometry.size());
        arr.geometry.push_back({xs[i], ys[j]});
      }
    }
  }

  std::vector<Edge> edges;
  std::vector<Length> lengths;
  // Consecutive vertices along a line are joined when the line covers the
  // stretch between them.
  for (std::size_t j = 0; j < ny; ++j) {
    std::size_t last = nx;
    for (std::size_t i = 0; i < nx; ++i) {
      if (last != nx && !(on_h[j * nx + i] && hseg(i - 1, j))) last = nx;
      if (id[j * nx + i] == kNoVertex) continue;
      if (last != nx) {
        edges.push_back({id[j * nx + last], id[j * nx + i]});
        lengths.push_back(xs[i] - xs[last]);
      }
      last = on_h[j * nx + i] ? i : nx;
    }
  }
  for (std::size_t i = 0; i < nx; ++i) {
    std::size_t last = ny;
    for (std::size_t j = 0; j < ny; ++j) {
      if (last != ny && !(on_v[j * nx + i] && vseg(i, j - 1))) last = ny;
      if (id[j * nx + i] == kNoVertex) continue;
      if (last != ny) {
        edges.push_back({id[last * nx + i], id[j * nx + i]});
        lengths.push_back(ys[j] - ys[last]);
      }
      last = on_v[j * nx + i] ? j : ny;
    }
  }
  arr.network = Graph(arr.geometry.size(), std::move(edges), std::move(lengths));

  // Faces: from each vertex, the next vertex to the right and the next one up
  // span a cell when the far corner closes it.
  const Graph& g = arr.network;
  auto step = [&](Vertex v, bool right) -> Vertex {
    const Point pv = arr.geometry[v];
    Vertex best = kNoVertex;
    for (const Vertex w : g.neighbors(v)) {
      const Point pw = arr.geometry[w];
      if (right ? (pw.y == pv.y && pw.x > pv.x) : (pw.x == pv.x && pw.y > pv.y)) best = w;
    }
    return best;
  };
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    const Vertex r = step(v, true);
    const Vertex u = step(v, false);
    if (r == kNoVertex || u == kNoVertex) continue;
    const Point pr = arr.geometry[r];
    const Point pu = arr.geometry[u];
    if (!cell_in(static_cast<std::ptrdiff_t>(index_of(xs, arr.geometry[v].x)),
                 static_cast<std::ptrdiff_t>(index_of(ys, arr.geometry[v].y)))) {
      continue;
    }
    const Vertex ru = step(r, false);
    const Vertex ur = step(u, true);
    if (ru == kNoVertex || ru != ur || arr.geometry[ru] != Point{pr.x, pu.y}) {
      throw InternalDefect("grid_network: a face of the arrangement is not a rectangle");
    }
    arr.cells.push_back({arr.geometry[v].x, arr.geometry[v].y, pr.x, pu.y, {v, r, ru, u}});
  }
  return arr;
}

}  // namespace detail

/// Grid lines through the corners of P and the network N(P). O(k^2).
inline GridArrangement grid_network(const RectPolygon& p) { return detail::arrange(p, p.corners); }

struct ExpandedNetwork {
  GridArrangement arrangement;
  Vertex s = kNoVertex;
  Vertex t = kNoVertex;
};

/// N(P) rebuilt with the extra grid lines through s and t.
inline ExpandedNetwork expanded_network(const RectPolygon& p, Point s, Point t) {
  if (!contains(p, s)) throw PointOutsideError(s);
  if (!contains(p, t)) throw PointOutsideError(t);
  std::vector<Point> seeds = p.corners;
  seeds.push_back(s);
  seeds.push_back(t);
  ExpandedNetwork x{detail::arrange(p, seeds)};
  const auto vs = x.arrangement.vertex_at(s);
  const auto vt = x.arrangement.vertex_at(t);
  if (!vs || !vt) throw InternalDefect("expanded_network: query point is not a network vertex");
  x.s = *vs;
  x.t = *vt;
  return x;
}

/// Exact geodesic l1 distance inside P, as a shortest path in N_{s,t}(P).
inline Length geodesic_dist(const RectPolygon& p, Point s, Point t) {
  if (!contains(p, s)) throw PointOutsideError(s);
  if (!contains(p, t)) throw PointOutsideError(t);
  if (s == t) return 0;
  const ExpandedNetwork x = expanded_network(p, s, t);
  return bfs_distances(x.arrangement.network, x.s)[x.t];
}

/// Expresses a point of P as a point of the complex of N(P): a network
/// vertex, a point on a network edge, or a point of a cell. The complex must
/// have been built from `arr.network` and factored by `e`. Linear in the
/// number of cells.
inline ComplexPoint locate(const GridArrangement& arr, const CellComplex& c, const TwoTreeEmbedding& e, Point q) {
  if (const auto v = arr.vertex_at(q)) return AtVertex{*v};
  const Graph& g = arr.network;
  for (EdgeId id = 0; id < g.edge_count(); ++id) {
    const Point a = arr.geometry[g.edge(id).u];
    const Point b = arr.geometry[g.edge(id).v];
    if (std::min(a.x, b.x) <= q.x && q.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= q.y &&
        q.y <= std::max(a.y, b.y)) {
      return OnEdge{id, (q.x - a.x > 0 ? q.x - a.x : a.x - q.x) + (q.y - a.y > 0 ? q.y - a.y : a.y - q.y)};
    }
  }
  std::unordered_map<std::uint64_t, std::uint32_t> by_diagonal;
  for (std::uint32_t i = 0; i < c.cells.size(); ++i) {
    const CellFrame f = cell_frame(c.cells[i]);
    by_diagonal.emplace((std::uint64_t{f.base} << 32) | f.opposite, i);
  }
  for (const GridCell& cell : arr.cells) {
    if (q.x < cell.x0 || q.x > cell.x1 || q.y < cell.y0 || q.y > cell.y1) continue;
    // Ids follow (y, x), so the lower-left corner is the cell's smallest id.
    const auto it = by_diagonal.find((std::uint64_t{cell.corners[0]} << 32) | cell.corners[2]);
    if (it == by_diagonal.end()) throw InternalDefect("locate: arrangement cell missing from the complex");
    const auto horizontal = g.find_edge(cell.corners[0], cell.corners[1]);
    const bool h_first = e.class_color[e.theta.edge_class[*horizontal]] == 1;
    const Length dx = q.x - cell.x0;
    const Length dy = q.y - cell.y0;
    return InCell{it->second, h_first ? dx : dy, h_first ? dy : dx};
  }
  throw PointOutsideError(q);
}

}  // namespace ramify
