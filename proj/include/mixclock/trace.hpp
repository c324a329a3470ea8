#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "mixclock/bigraph.hpp"
#include "mixclock/ids.hpp"

namespace mixclock {

struct Event {
  std::size_t index;
  ThreadId thread;
  ObjectId object;

  Edge edge() const noexcept { return {thread, object}; }

  friend bool operator==(const Event&, const Event&) = default;
};

/// A computation: events in their global arrival order, each performed by
/// one thread on one object.
class Trace {
 public:
  Trace() = default;
  Trace(std::size_t thread_count, std::size_t object_count)
      : thread_count_(thread_count), object_count_(object_count) {}

  std::size_t thread_count() const noexcept { return thread_count_; }
  std::size_t object_count() const noexcept { return object_count_; }
  std::size_t size() const noexcept { return events_.size(); }
  bool empty() const noexcept { return events_.empty(); }

  const std::vector<Event>& events() const noexcept { return events_; }
  const Event& operator[](std::size_t i) const { return events_.at(i); }

  const Event& append(ThreadId t, ObjectId o) {
    if (to_index(t) >= thread_count_)
      throw std::out_of_range("thread " + std::to_string(to_index(t)) + " outside trace of " +
                              std::to_string(thread_count_) + " threads");
    if (to_index(o) >= object_count_)
      throw std::out_of_range("object " + std::to_string(to_index(o)) + " outside trace of " +
                              std::to_string(object_count_) + " objects");
    events_.push_back({events_.size(), t, o});
    return events_.back();
  }
  const Event& append(Edge e) { return append(e.thread, e.object); }

  friend bool operator==(const Trace&, const Trace&) = default;

 private:
  std::size_t thread_count_ = 0;
  std::size_t object_count_ = 0;
  std::vector<Event> events_;
};

/// Distinct (thread, object) pairs of the trace; every declared thread and
/// object is a vertex, touched or not.
inline BipartiteGraph build_bigraph(const Trace& t) {
  BipartiteGraph g(t.thread_count(), t.object_count());
  for (const Event& e : t.events()) g.add_edge(e.thread, e.object);
  return g;
}

/**
 * Happened-before over the events of one trace, stored as the full
 * reachability matrix (one bit row per event).
 */
class CausalityOracle {
 public:
  explicit CausalityOracle(std::size_t event_count)
      : n_(event_count), words_((event_count + 63) / 64), bits_(n_ * words_, 0) {}

  std::size_t size() const noexcept { return n_; }

  bool happened_before(std::size_t e, std::size_t f) const {
    check(e);
    check(f);
    return (bits_[e * words_ + f / 64] >> (f % 64)) & 1U;
  }

  bool concurrent(std::size_t e, std::size_t f) const {
    return e != f && !happened_before(e, f) && !happened_before(f, e);
  }

  void set(std::size_t e, std::size_t f) {
    check(e);
    check(f);
    bits_[e * words_ + f / 64] |= std::uint64_t{1} << (f % 64);
  }

  /// row(e) |= row(f)
  void absorb(std::size_t e, std::size_t f) {
    check(e);
    check(f);
    for (std::size_t w = 0; w < words_; ++w) bits_[e * words_ + w] |= bits_[f * words_ + w];
  }

 private:
  void check(std::size_t e) const {
    if (e >= n_) throw std::out_of_range("event " + std::to_string(e) + " out of range");
  }

  std::size_t n_;
  std::size_t words_;
  std::vector<std::uint64_t> bits_;
};

/**
 * Builds happened-before: each event points to the next event of its thread
 * and the next event on its object, and the relation is the transitive
 * closure of those links. Successors always have a larger index, so one
 * sweep from the last event backwards closes the relation.
 */
inline CausalityOracle oracle(const Trace& t) {
  constexpr std::size_t none = static_cast<std::size_t>(-1);
  const auto& events = t.events();
  CausalityOracle hb(events.size());
  std::vector<std::size_t> next_on_thread(t.thread_count(), none);
  std::vector<std::size_t> next_on_object(t.object_count(), none);

  for (std::size_t i = events.size(); i-- > 0;) {
    const Event& e = events[i];
    for (std::size_t succ : {next_on_thread[to_index(e.thread)], next_on_object[to_index(e.object)]}) {
      if (succ == none) continue;
      hb.set(i, succ);
      hb.absorb(i, succ);
    }
    next_on_thread[to_index(e.thread)] = i;
    next_on_object[to_index(e.object)] = i;
  }
  return hb;
}

}  // namespace mixclock
