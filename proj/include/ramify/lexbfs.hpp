#pragma once

// Lexicographic breadth-first search by partition refinement, plus a plain
// BFS ordering carrying the same label bookkeeping.

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ramify/graph.hpp"

namespace ramify {

class NotConnectedError : public Error {
 public:
  NotConnectedError(Vertex reached, Vertex unreached)
      : Error("graph is not connected: vertex " + std::to_string(unreached) + " is unreachable from " +
              std::to_string(reached)),
        reached_(reached),
        unreached_(unreached) {}

  Vertex reached() const { return reached_; }
  Vertex unreached() const { return unreached_; }

 private:
  Vertex reached_;
  Vertex unreached_;
};

/// A vertex numbering together with, for every vertex, its earlier-numbered
/// neighbors in numbering order. Labels are truncated after three entries:
/// downstream checks only distinguish sizes 0, 1, 2 and "at least 3".
struct LexBFSOrder {
  static constexpr std::size_t kLabelCap = 3;

  // Label entries and their edges share one record per vertex.
  struct Label {
    std::array<Vertex, kLabelCap> vertices;
    std::array<EdgeId, kLabelCap> edges;  // edge to the matching entry
    std::uint32_t size = 0;
  };

  Vertex root = kNoVertex;
  std::vector<Vertex> order;     // number -> vertex
  std::vector<Vertex> position;  // vertex -> number
  std::vector<Label> labels;

  std::size_t size() const { return order.size(); }

  std::size_t label_size(Vertex x) const { return labels[x].size; }
  std::span<const Vertex> label(Vertex x) const { return {labels[x].vertices.data(), labels[x].size}; }
  std::span<const EdgeId> label_edge_ids(Vertex x) const { return {labels[x].edges.data(), labels[x].size}; }

  /// First label entry; kNoVertex for the root.
  Vertex parent(Vertex x) const { return labels[x].size == 0 ? kNoVertex : labels[x].vertices[0]; }

  /// The edge from x to `to`, which must be in label(x).
  EdgeId label_edge(Vertex x, Vertex to) const {
    const Label& l = labels[x];
    for (std::uint32_t i = 0; i < l.size; ++i) {
      if (l.vertices[i] == to) return l.edges[i];
    }
    return kNoEdge;
  }
};

namespace detail {

inline LexBFSOrder make_order(std::size_t n, Vertex root) {
  LexBFSOrder o;
  o.root = root;
  o.order.reserve(n);
  o.position.assign(n, kNoVertex);
  o.labels.resize(n);
  return o;
}

inline void push_label(LexBFSOrder::Label& l, Vertex x, EdgeId e) {
  if (l.size < LexBFSOrder::kLabelCap) {
    l.vertices[l.size] = x;
    l.edges[l.size] = e;
    ++l.size;
  }
}

// Numbers `x` and appends it to the labels of its unnumbered neighbors.
inline void number_vertex(const Graph& g, LexBFSOrder& o, Vertex x) {
  o.position[x] = static_cast<Vertex>(o.order.size());
  o.order.push_back(x);
  const auto nb = g.neighbors(x);
  const auto inc = g.incident_edges(x);
  for (std::size_t i = 0; i < nb.size(); ++i) {
    if (o.position[nb[i]] == kNoVertex) push_label(o.labels[nb[i]], x, inc[i]);
  }
}

}  // namespace detail

/// Lexicographic BFS from `root`.
///
/// The queue of sets is a doubly linked list of classes, each class a doubly
/// linked list of vertices kept in ascending id order: refinement appends
/// neighbors in adjacency (ascending) order and removal preserves the order of
/// what remains. Removing the head of the first class therefore always yields
/// its smallest id, which fixes the tie-breaking. Vertices with an empty label
/// form an implicit last class that is never materialized. Linear in
/// |V| + |E|.
///
/// Throws NotConnectedError when some vertex is unreachable from `root`.
inline LexBFSOrder lexbfs(const Graph& g, Vertex root = 0) {
  const std::size_t n = g.vertex_count();
  if (root >= n) throw std::out_of_range("lexbfs: root is not a vertex");
  constexpr std::uint32_t kNil = std::numeric_limits<std::uint32_t>::max();
  constexpr std::uint32_t kUnlabeled = kNil - 1;

  struct Class {
    std::uint32_t head = kNil, tail = kNil;
    std::uint32_t prev = kNil, next = kNil;
    Vertex stamp = kNoVertex;     // pivot that last split this class
    std::uint32_t split = kNil;  // class receiving neighbors of `stamp`
  };
  // Emptied classes are recycled, so only live classes occupy memory.
  std::vector<Class> classes;
  std::vector<std::uint32_t> free_classes;
  struct Slot {
    std::uint32_t next = kNil, prev = kNil, cls = kUnlabeled;
  };
  std::vector<Slot> vs(n);
  std::uint32_t queue_head = kNil, queue_tail = kNil;
  Vertex unlabeled_stamp = kNoVertex;
  std::uint32_t unlabeled_split = kNil;

  auto new_class = [&]() {
    if (free_classes.empty()) {
      classes.push_back({});
      return static_cast<std::uint32_t>(classes.size() - 1);
    }
    const std::uint32_t c = free_classes.back();
    free_classes.pop_back();
    classes[c] = {};
    return c;
  };
  auto append = [&](std::uint32_t c, Vertex x) {
    Class& k = classes[c];
    vs[x] = {kNil, k.tail, c};
    if (k.tail == kNil) k.head = x; else vs[k.tail].next = x;
    k.tail = x;
  };
  auto unlink_class = [&](std::uint32_t c) {
    Class& k = classes[c];
    if (k.prev == kNil) queue_head = k.next; else classes[k.prev].next = k.next;
    if (k.next == kNil) queue_tail = k.prev; else classes[k.next].prev = k.prev;
    free_classes.push_back(c);
  };
  // Removes x from its class, dropping the class from the queue when emptied.
  auto detach = [&](Vertex x) {
    Slot& v = vs[x];
    const std::uint32_t c = v.cls;
    v.cls = kNil;
    if (c == kUnlabeled) return;
    Class& k = classes[c];
    if (v.prev == kNil) k.head = v.next; else vs[v.prev].next = v.next;
    if (v.next == kNil) k.tail = v.prev; else vs[v.next].prev = v.prev;
    if (k.head == kNil) unlink_class(c);
  };
  // A fresh class placed just before `before`, or at the end when kNil.
  auto insert_class = [&](std::uint32_t before) {
    const std::uint32_t fresh = new_class();
    Class& k = classes[fresh];
    k.next = before;
    k.prev = before == kNil ? queue_tail : classes[before].prev;
    if (k.prev == kNil) queue_head = fresh; else classes[k.prev].next = fresh;
    if (before == kNil) queue_tail = fresh; else classes[before].prev = fresh;
    return fresh;
  };

  append(insert_class(kNil), root);

  LexBFSOrder o = detail::make_order(n, root);
  while (queue_head != kNil) {
    const Vertex pivot = classes[queue_head].head;
    detach(pivot);
    o.position[pivot] = static_cast<Vertex>(o.order.size());
    o.order.push_back(pivot);

    const auto nb = g.neighbors(pivot);
    const auto inc = g.incident_edges(pivot);
    for (std::size_t i = 0; i < nb.size(); ++i) {
      const Vertex w = nb[i];
      const std::uint32_t c = vs[w].cls;
      if (c == kNil) continue;  // already numbered
      detail::push_label(o.labels[w], pivot, inc[i]);
      std::uint32_t target;
      if (c == kUnlabeled) {
        if (unlabeled_stamp != pivot) {
          unlabeled_stamp = pivot;
          unlabeled_split = insert_class(kNil);
          classes[unlabeled_split].stamp = pivot;
        }
        target = unlabeled_split;
      } else {
        if (classes[c].stamp != pivot) {
          const std::uint32_t fresh = insert_class(c);
          classes[fresh].stamp = pivot;
          classes[c].stamp = pivot;
          classes[c].split = fresh;
        }
        target = classes[c].split;
      }
      detach(w);
      append(target, w);
    }
  }
  if (o.order.size() < n) {
    for (Vertex x = 0; x < n; ++x) {
      if (vs[x].cls != kNil) throw NotConnectedError(root, x);
    }
  }
  return o;
}

/// Plain BFS from `root` (neighbors enqueued in ascending id order), with
/// labels recorded exactly as for lexbfs. Used by the BFS fallback recognizer.
inline LexBFSOrder bfs_order(const Graph& g, Vertex root = 0) {
  const std::size_t n = g.vertex_count();
  if (root >= n) throw std::out_of_range("bfs_order: root is not a vertex");
  LexBFSOrder o = detail::make_order(n, root);
  std::vector<char> queued(n, 0);
  std::vector<Vertex> queue{root};
  queue.reserve(n);
  queued[root] = 1;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Vertex x = queue[head];
    detail::number_vertex(g, o, x);
    for (const Vertex w : g.neighbors(x)) {
      if (!queued[w]) {
        queued[w] = 1;
        queue.push_back(w);
      }
    }
  }
  if (queue.size() != n) {
    for (Vertex x = 0; x < n; ++x) {
      if (!queued[x]) throw NotConnectedError(root, x);
    }
  }
  return o;
}

}  // namespace ramify
