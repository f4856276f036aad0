#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <vector>

namespace ramify::detail {

inline constexpr std::uint8_t kUncolored = 0xff;

struct TwoColoring {
  std::vector<std::uint8_t> side;         // 0/1 per node; kUncolored past a failure
  std::vector<std::uint32_t> odd_cycle;  // closed walk of odd length, empty on success
  bool ok() const { return odd_cycle.empty(); }
};

// Breadth-first 2-coloring over nodes [0, n). Components are started in
// increasing node order and each start node gets side 0. Stops at the first
// monochromatic edge and reports the odd cycle it closes in the BFS forest.
//
// for_each_neighbor(u, f) must call f(v) for every neighbor v of u.
template <class ForEachNeighbor>
TwoColoring two_color(std::size_t n, ForEachNeighbor&& for_each_neighbor) {
  constexpr auto kNone = std::numeric_limits<std::uint32_t>::max();
  TwoColoring result;
  result.side.assign(n, kUncolored);
  std::vector<std::uint32_t> parent(n, kNone);
  std::vector<std::uint32_t> depth(n, 0);
  std::vector<std::uint32_t> queue;
  queue.reserve(n);

  for (std::uint32_t start = 0; start < n; ++start) {
    if (result.side[start] != kUncolored) continue;
    result.side[start] = 0;
    queue.clear();
    queue.push_back(start);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const std::uint32_t u = queue[head];
      std::uint32_t clash = kNone;
      for_each_neighbor(u, [&](std::uint32_t v) {
        if (clash != kNone) return;
        if (result.side[v] == kUncolored) {
          result.side[v] = result.side[u] ^ 1;
          parent[v] = u;
          depth[v] = depth[u] + 1;
          queue.push_back(v);
        } else if (result.side[v] == result.side[u]) {
          clash = v;
        }
      });
      if (clash == kNone) continue;

      // u and clash lie in one BFS tree; walk both up to their meeting point.
      std::uint32_t a = u;
      std::uint32_t b = clash;
      std::vector<std::uint32_t> left;
      std::vector<std::uint32_t> right;
      while (depth[a] > depth[b]) { left.push_back(a); a = parent[a]; }
      while (depth[b] > depth[a]) { right.push_back(b); b = parent[b]; }
      while (a != b) {
        left.push_back(a);
        right.push_back(b);
        a = parent[a];
        b = parent[b];
      }
      left.push_back(a);
      std::reverse(right.begin(), right.end());
      left.insert(left.end(), right.begin(), right.end());
      result.odd_cycle = std::move(left);
      return result;
    }
  }
  return result;
}

}  // namespace ramify::detail
