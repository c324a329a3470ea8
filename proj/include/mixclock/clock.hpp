#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "mixclock/bigraph.hpp"
#include "mixclock/ids.hpp"
#include "mixclock/trace.hpp"

namespace mixclock {

/**
 * The components of a mixed clock, in a fixed order.
 *
 * Members are only ever appended, never removed or reordered, so a clock
 * stamped against an earlier state of the set stays meaningful after the
 * set grows.
 */
class ComponentSet {
 public:
  ComponentSet() = default;

  /// Threads ascending, then objects ascending.
  static ComponentSet from_cover(const VertexCover& cover) {
    ComponentSet set;
    for (ThreadId t : cover.threads) set.append(Component::of(t));
    for (ObjectId o : cover.objects) set.append(Component::of(o));
    return set;
  }

  /// Returns false (and leaves the set unchanged) if `c` is already a member.
  bool append(Component c) {
    if (index_.contains(c)) return false;
    index_.emplace(c, members_.size());
    members_.push_back(c);
    return true;
  }

  bool contains(Component c) const { return index_.contains(c); }
  bool contains(ThreadId t) const { return contains(Component::of(t)); }
  bool contains(ObjectId o) const { return contains(Component::of(o)); }

  std::optional<std::size_t> index_of(Component c) const {
    auto it = index_.find(c);
    return it == index_.end() ? std::nullopt : std::optional{it->second};
  }

  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }
  const Component& operator[](std::size_t i) const { return members_.at(i); }
  const std::vector<Component>& members() const noexcept { return members_; }
  auto begin() const noexcept { return members_.begin(); }
  auto end() const noexcept { return members_.end(); }

  friend bool operator==(const ComponentSet& a, const ComponentSet& b) { return a.members_ == b.members_; }

 private:
  std::vector<Component> members_;
  std::unordered_map<Component, std::size_t> index_;
};

/// Sparse vector timestamp. Components without an entry read as zero, and
/// zero counters are never stored.
class MixedClock {
 public:
  MixedClock() = default;

  std::uint64_t operator[](Component c) const {
    auto it = counters_.find(c);
    return it == counters_.end() ? 0 : it->second;
  }

  void increment(Component c) { ++counters_[c]; }

  /// Sets component `c` to `value`; zero erases the entry.
  void set(Component c, std::uint64_t value) {
    if (value == 0)
      counters_.erase(c);
    else
      counters_[c] = value;
  }

  /// Componentwise max with `other`.
  void merge(const MixedClock& other) {
    for (const auto& [c, v] : other.counters_) {
      auto& mine = counters_[c];
      if (v > mine) mine = v;
    }
  }

  const std::map<Component, std::uint64_t>& entries() const noexcept { return counters_; }
  bool empty() const noexcept { return counters_.empty(); }

  /// Counters in the order of `set`.
  std::vector<std::uint64_t> dense(const ComponentSet& set) const {
    std::vector<std::uint64_t> out;
    out.reserve(set.size());
    for (Component c : set) out.push_back((*this)[c]);
    return out;
  }

  friend bool operator==(const MixedClock&, const MixedClock&) = default;

 private:
  std::map<Component, std::uint64_t> counters_;
};

/// Strict vector order: a <= b in every component and a != b.
inline bool vc_less(const MixedClock& a, const MixedClock& b) {
  for (const auto& [c, v] : a.entries())
    if (v > b[c]) return false;
  return a != b;
}

/// As above, additionally rejecting clocks with components outside `set`.
inline bool vc_less(const MixedClock& a, const MixedClock& b, const ComponentSet& set) {
  for (const MixedClock* clock : {&a, &b}) {
    for (const auto& entry : clock->entries()) {
      if (!set.contains(entry.first))
        throw std::invalid_argument("clock component " + to_string(entry.first) +
                                    " is not in the governing component set");
    }
  }
  return vc_less(a, b);
}

/// Which counter an event bumps when both its thread and its object are
/// components.
enum class TieRule { thread_wins, object_wins };

/// An event whose thread and object are both missing from the component set.
class CoverageError : public std::invalid_argument {
 public:
  explicit CoverageError(const Event& e)
      : std::invalid_argument("event " + std::to_string(e.index) + " (t" + std::to_string(to_index(e.thread)) +
                              ", o" + std::to_string(to_index(e.object)) +
                              ") is covered by neither a thread nor an object component"),
        event_(e.index) {}

  std::size_t event() const noexcept { return event_; }

 private:
  std::size_t event_;
};

/**
 * Incremental timestamping engine.
 *
 * Every thread and every object carries a clock, initially empty. An event
 * takes the max of its thread's and object's clocks, bumps one covered
 * component of the pair, and hands the result back to both.
 */
class Stamper {
 public:
  struct Stamp {
    MixedClock clock;
    Component incremented;
  };

  Stamper(std::size_t thread_count, std::size_t object_count, TieRule tie = TieRule::thread_wins)
      : thread_clocks_(thread_count), object_clocks_(object_count), tie_(tie) {}

  Stamp stamp(const Event& e, const ComponentSet& components) {
    const bool thread_covered = components.contains(e.thread);
    const bool object_covered = components.contains(e.object);
    if (!thread_covered && !object_covered) throw CoverageError(e);

    const bool bump_thread = thread_covered && (!object_covered || tie_ == TieRule::thread_wins);
    const Component target = bump_thread ? Component::of(e.thread) : Component::of(e.object);

    MixedClock& at_thread = thread_clocks_.at(to_index(e.thread));
    MixedClock& at_object = object_clocks_.at(to_index(e.object));
    MixedClock v = at_thread;
    v.merge(at_object);
    v.increment(target);
    at_thread = v;
    at_object = v;
    return {std::move(v), target};
  }

 private:
  std::vector<MixedClock> thread_clocks_;
  std::vector<MixedClock> object_clocks_;
  TieRule tie_;
};

struct StampedTrace {
  Trace trace;
  ComponentSet components;
  std::vector<MixedClock> stamps;
  /// Component bumped by each event; empty when the stamps were loaded from
  /// a file rather than produced by a Stamper.
  std::vector<Component> incremented;
};

inline StampedTrace stamp(const Trace& t, const ComponentSet& components, TieRule tie = TieRule::thread_wins) {
  StampedTrace st{t, components, {}, {}};
  st.stamps.reserve(t.size());
  st.incremented.reserve(t.size());
  Stamper stamper(t.thread_count(), t.object_count(), tie);
  for (const Event& e : t.events()) {
    auto s = stamper.stamp(e, components);
    st.stamps.push_back(std::move(s.clock));
    st.incremented.push_back(s.incremented);
  }
  return st;
}

/// An ordered pair (earlier, later) on which the clocks disagree with
/// happened-before.
struct Violation {
  std::size_t from;
  std::size_t to;
  bool happened_before;
  bool clock_less;

  friend bool operator==(const Violation&, const Violation&) = default;
};

struct ValidationReport {
  std::size_t pairs_checked = 0;
  std::vector<Violation> violations;

  bool passed() const noexcept { return violations.empty(); }
};

/// Checks e -> f  <=>  e.v < f.v over every ordered pair of distinct events.
inline ValidationReport validate(const StampedTrace& st) {
  if (st.stamps.size() != st.trace.size())
    throw std::invalid_argument("stamped trace has " + std::to_string(st.stamps.size()) + " stamps for " +
                                std::to_string(st.trace.size()) + " events");
  const CausalityOracle hb = oracle(st.trace);

  // Dense copies over every component any stamp mentions.
  ComponentSet axis = st.components;
  for (const MixedClock& v : st.stamps)
    for (const auto& entry : v.entries()) axis.append(entry.first);
  std::vector<std::vector<std::uint64_t>> dense;
  dense.reserve(st.stamps.size());
  for (const MixedClock& v : st.stamps) dense.push_back(v.dense(axis));

  auto less = [](const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
    bool strict = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] > b[i]) return false;
      strict = strict || a[i] < b[i];
    }
    return strict;
  };

  ValidationReport report;
  const std::size_t n = st.stamps.size();
  for (std::size_t e = 0; e < n; ++e) {
    for (std::size_t f = 0; f < n; ++f) {
      if (e == f) continue;
      ++report.pairs_checked;
      const bool before = hb.happened_before(e, f);
      const bool clock_less = less(dense[e], dense[f]);
      if (before != clock_less) report.violations.push_back({e, f, before, clock_less});
    }
  }
  return report;
}

/// Minimum vertex cover of the trace's interaction graph, as components.
inline ComponentSet offline_clock(const Trace& t) {
  const BipartiteGraph g = build_bigraph(t);
  return ComponentSet::from_cover(min_vertex_cover(g, max_matching(g)));
}

}  // namespace mixclock
