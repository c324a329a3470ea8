#pragma once

#include <algorithm>
#include <cstddef>
#include <deque>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "mixclock/ids.hpp"

namespace mixclock {

/**
 * Thread-object interaction graph.
 *
 * Threads are the ids [0, thread_count()) and objects the ids
 * [0, object_count()); vertices of degree zero are allowed. An edge records
 * that the thread touched the object at least once, so inserting an existing
 * edge is a no-op. Adjacency lists are kept sorted by id, which fixes the
 * iteration order of every algorithm built on top of the graph.
 */
class BipartiteGraph {
 public:
  BipartiteGraph() = default;
  BipartiteGraph(std::size_t thread_count, std::size_t object_count)
      : thread_adj_(thread_count), object_adj_(object_count) {}

  std::size_t thread_count() const noexcept { return thread_adj_.size(); }
  std::size_t object_count() const noexcept { return object_adj_.size(); }
  std::size_t edge_count() const noexcept { return edge_count_; }

  bool contains(ThreadId t) const noexcept { return to_index(t) < thread_adj_.size(); }
  bool contains(ObjectId o) const noexcept { return to_index(o) < object_adj_.size(); }

  /// Returns true when the edge was not present before.
  bool add_edge(ThreadId t, ObjectId o) {
    check_endpoints(t, o);
    auto& objs = thread_adj_[to_index(t)];
    auto pos = std::lower_bound(objs.begin(), objs.end(), o);
    if (pos != objs.end() && *pos == o) return false;
    objs.insert(pos, o);
    auto& thrs = object_adj_[to_index(o)];
    thrs.insert(std::lower_bound(thrs.begin(), thrs.end(), t), t);
    ++edge_count_;
    return true;
  }
  bool add_edge(Edge e) { return add_edge(e.thread, e.object); }

  bool has_edge(ThreadId t, ObjectId o) const noexcept {
    if (!contains(t) || !contains(o)) return false;
    const auto& objs = thread_adj_[to_index(t)];
    return std::binary_search(objs.begin(), objs.end(), o);
  }
  bool has_edge(Edge e) const noexcept { return has_edge(e.thread, e.object); }

  const std::vector<ObjectId>& neighbors(ThreadId t) const { return thread_adj_.at(to_index(t)); }
  const std::vector<ThreadId>& neighbors(ObjectId o) const { return object_adj_.at(to_index(o)); }

  std::size_t degree(ThreadId t) const { return neighbors(t).size(); }
  std::size_t degree(ObjectId o) const { return neighbors(o).size(); }

  /// Number of threads (objects) with at least one edge.
  std::size_t active_thread_count() const noexcept { return count_active(thread_adj_); }
  std::size_t active_object_count() const noexcept { return count_active(object_adj_); }

  /// All edges, ascending by (thread, object).
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (std::size_t t = 0; t < thread_adj_.size(); ++t)
      for (ObjectId o : thread_adj_[t]) out.push_back({ThreadId(t), o});
    return out;
  }

  friend bool operator==(const BipartiteGraph& a, const BipartiteGraph& b) {
    return a.thread_adj_ == b.thread_adj_ && a.object_adj_.size() == b.object_adj_.size();
  }

 private:
  void check_endpoints(ThreadId t, ObjectId o) const {
    if (!contains(t))
      throw std::out_of_range("thread " + std::to_string(to_index(t)) + " outside graph of " +
                              std::to_string(thread_count()) + " threads");
    if (!contains(o))
      throw std::out_of_range("object " + std::to_string(to_index(o)) + " outside graph of " +
                              std::to_string(object_count()) + " objects");
  }

  template <typename Adj>
  static std::size_t count_active(const Adj& adj) noexcept {
    return static_cast<std::size_t>(
        std::count_if(adj.begin(), adj.end(), [](const auto& l) { return !l.empty(); }));
  }

  std::vector<std::vector<ObjectId>> thread_adj_;
  std::vector<std::vector<ThreadId>> object_adj_;
  std::size_t edge_count_ = 0;
};

/// A set of vertex-disjoint (thread, object) pairs.
class Matching {
 public:
  Matching() = default;

  /// Throws std::invalid_argument if a pair shares an endpoint with one
  /// already present.
  static Matching from_pairs(const std::vector<Edge>& pairs) {
    Matching m;
    for (const Edge& e : pairs) m.add(e);
    return m;
  }

  void add(Edge e) {
    if (by_thread_.contains(e.thread))
      throw std::invalid_argument("thread " + std::to_string(to_index(e.thread)) +
                                  " is matched twice");
    if (by_object_.contains(e.object))
      throw std::invalid_argument("object " + std::to_string(to_index(e.object)) +
                                  " is matched twice");
    by_thread_.emplace(e.thread, e.object);
    by_object_.emplace(e.object, e.thread);
  }

  std::size_t size() const noexcept { return by_thread_.size(); }
  bool empty() const noexcept { return by_thread_.empty(); }

  std::optional<ObjectId> mate(ThreadId t) const {
    auto it = by_thread_.find(t);
    return it == by_thread_.end() ? std::nullopt : std::optional{it->second};
  }
  std::optional<ThreadId> mate(ObjectId o) const {
    auto it = by_object_.find(o);
    return it == by_object_.end() ? std::nullopt : std::optional{it->second};
  }

  bool contains(Edge e) const {
    auto m = mate(e.thread);
    return m && *m == e.object;
  }

  /// Ascending by thread.
  std::vector<Edge> pairs() const {
    std::vector<Edge> out;
    out.reserve(by_thread_.size());
    for (auto [t, o] : by_thread_) out.push_back({t, o});
    return out;
  }

  friend bool operator==(const Matching& a, const Matching& b) { return a.by_thread_ == b.by_thread_; }

 private:
  std::map<ThreadId, ObjectId> by_thread_;
  std::map<ObjectId, ThreadId> by_object_;
};

struct VertexCover {
  std::set<ThreadId> threads;
  std::set<ObjectId> objects;

  std::size_t size() const noexcept { return threads.size() + objects.size(); }
  bool contains(ThreadId t) const { return threads.contains(t); }
  bool contains(ObjectId o) const { return objects.contains(o); }

  friend bool operator==(const VertexCover&, const VertexCover&) = default;
};

/**
 * Maximum cardinality matching by Hopcroft-Karp.
 *
 * Each phase layers the graph by BFS from the free threads, stops at the
 * first layer that reaches a free object, and then augments along a maximal
 * set of vertex-disjoint shortest augmenting paths found by DFS. Threads and
 * adjacency lists are scanned in ascending id order, so the result is a
 * deterministic function of the graph.
 */
inline Matching max_matching(const BipartiteGraph& g) {
  constexpr std::size_t unmatched = std::numeric_limits<std::size_t>::max();
  constexpr std::size_t unreached = std::numeric_limits<std::size_t>::max();

  const std::size_t n = g.thread_count();
  std::vector<std::size_t> thread_mate(n, unmatched);
  std::vector<std::size_t> object_mate(g.object_count(), unmatched);
  std::vector<std::size_t> layer(n);
  std::vector<std::size_t> cursor(n);
  std::size_t free_layer = unreached;

  auto build_layers = [&] {
    std::deque<std::size_t> queue;
    for (std::size_t t = 0; t < n; ++t) {
      if (thread_mate[t] == unmatched) {
        layer[t] = 0;
        queue.push_back(t);
      } else {
        layer[t] = unreached;
      }
    }
    free_layer = unreached;
    while (!queue.empty()) {
      std::size_t t = queue.front();
      queue.pop_front();
      if (layer[t] >= free_layer) continue;
      for (ObjectId o : g.neighbors(ThreadId(t))) {
        std::size_t next = object_mate[to_index(o)];
        if (next == unmatched) {
          free_layer = std::min(free_layer, layer[t]);
        } else if (layer[next] == unreached) {
          layer[next] = layer[t] + 1;
          queue.push_back(next);
        }
      }
    }
    return free_layer != unreached;
  };

  auto augment = [&](auto&& self, std::size_t t) -> bool {
    const auto& adj = g.neighbors(ThreadId(t));
    for (; cursor[t] < adj.size(); ++cursor[t]) {
      const std::size_t o = to_index(adj[cursor[t]]);
      const std::size_t next = object_mate[o];
      const bool ends_here = next == unmatched && layer[t] == free_layer;
      const bool extends = next != unmatched && layer[next] == layer[t] + 1 && self(self, next);
      if (ends_here || extends) {
        thread_mate[t] = o;
        object_mate[o] = t;
        ++cursor[t];
        return true;
      }
    }
    layer[t] = unreached;
    return false;
  };

  while (build_layers()) {
    std::fill(cursor.begin(), cursor.end(), 0);
    for (std::size_t t = 0; t < n; ++t)
      if (thread_mate[t] == unmatched) augment(augment, t);
  }

  Matching m;
  for (std::size_t t = 0; t < n; ++t)
    if (thread_mate[t] != unmatched) m.add({ThreadId(t), ObjectId(thread_mate[t])});
  return m;
}

/**
 * Minimum vertex cover from a maximum matching (König's construction).
 *
 * Z starts as the unmatched threads and grows along alternating paths:
 * thread to object over a non-matching edge, object back to its mate over the
 * matching edge. The cover is (threads not in Z) plus (objects in Z). The
 * matching must be maximum; that is the caller's contract and is not checked.
 * A `m` that is not a matching of `g` is rejected with std::invalid_argument.
 */
inline VertexCover min_vertex_cover(const BipartiteGraph& g, const Matching& m) {
  for (const Edge& e : m.pairs()) {
    if (!g.has_edge(e))
      throw std::invalid_argument("matched pair (t" + std::to_string(to_index(e.thread)) + ", o" +
                                  std::to_string(to_index(e.object)) + ") is not an edge");
  }

  std::vector<bool> thread_in_z(g.thread_count(), false);
  std::vector<bool> object_in_z(g.object_count(), false);
  std::deque<ThreadId> queue;
  for (std::size_t t = 0; t < g.thread_count(); ++t) {
    if (!m.mate(ThreadId(t))) {
      thread_in_z[t] = true;
      queue.push_back(ThreadId(t));
    }
  }
  while (!queue.empty()) {
    ThreadId t = queue.front();
    queue.pop_front();
    const auto own_mate = m.mate(t);
    for (ObjectId o : g.neighbors(t)) {
      if (own_mate == o || object_in_z[to_index(o)]) continue;
      object_in_z[to_index(o)] = true;
      // Every object reachable this way is matched when m is maximum.
      if (auto back = m.mate(o); back && !thread_in_z[to_index(*back)]) {
        thread_in_z[to_index(*back)] = true;
        queue.push_back(*back);
      }
    }
  }

  VertexCover cover;
  for (std::size_t t = 0; t < g.thread_count(); ++t)
    if (!thread_in_z[t]) cover.threads.insert(ThreadId(t));
  for (std::size_t o = 0; o < g.object_count(); ++o)
    if (object_in_z[o]) cover.objects.insert(ObjectId(o));
  return cover;
}

inline bool is_vertex_cover(const BipartiteGraph& g, const VertexCover& c) {
  const auto edges = g.edges();
  return std::all_of(edges.begin(), edges.end(),
                     [&](const Edge& e) { return c.contains(e.thread) || c.contains(e.object); });
}

}  // namespace mixclock
