#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mixclock/bigraph.hpp"
#include "mixclock/clock.hpp"
#include "mixclock/random.hpp"
#include "mixclock/trace.hpp"

namespace mixclock {

/// How a newly revealed, uncovered event picks the component to append.
enum class MechanismKind {
  naive_threads,  ///< always the thread
  naive_objects,  ///< always the object
  random,         ///< thread or object with equal probability
  popularity,     ///< the endpoint of higher degree / |E|, thread on ties
};

inline constexpr std::array<MechanismKind, 4> all_mechanisms{
    MechanismKind::naive_threads, MechanismKind::naive_objects, MechanismKind::random, MechanismKind::popularity};

constexpr std::string_view name(MechanismKind k) noexcept {
  switch (k) {
    case MechanismKind::naive_threads: return "naive-threads";
    case MechanismKind::naive_objects: return "naive-objects";
    case MechanismKind::random: return "random";
    case MechanismKind::popularity: return "popularity";
  }
  return "?";
}

inline std::optional<MechanismKind> parse_mechanism(std::string_view s) {
  for (MechanismKind k : all_mechanisms)
    if (name(k) == s) return k;
  return std::nullopt;
}

struct Mechanism {
  MechanismKind kind;
  std::uint64_t seed = 0;  ///< only consumed by MechanismKind::random
};

/// What one reveal did. Popularities are measured after the event's edge
/// was inserted.
struct Decision {
  std::size_t index;
  ThreadId thread;
  ObjectId object;
  std::optional<Component> added;
  double thread_popularity;
  double object_popularity;
};

/**
 * Interaction graph and component set of a computation whose events arrive
 * one at a time. Components are append-only; after each reveal the event's
 * thread or object is a component.
 */
class OnlineState {
 public:
  OnlineState(std::size_t thread_count, std::size_t object_count, Mechanism mechanism)
      : graph_(thread_count, object_count), mechanism_(mechanism), rng_(mechanism.seed) {}

  /// Resumes from an already revealed graph and component set.
  OnlineState(BipartiteGraph revealed, ComponentSet components, Mechanism mechanism)
      : graph_(std::move(revealed)), components_(std::move(components)), mechanism_(mechanism),
        rng_(mechanism.seed) {}

  Decision reveal(const Event& e) {
    graph_.add_edge(e.thread, e.object);
    Decision d{e.index, e.thread, e.object, std::nullopt, popularity(e.thread), popularity(e.object)};
    if (components_.contains(e.thread) || components_.contains(e.object)) return d;

    bool take_thread = true;
    switch (mechanism_.kind) {
      case MechanismKind::naive_threads: take_thread = true; break;
      case MechanismKind::naive_objects: take_thread = false; break;
      case MechanismKind::random: take_thread = coin(rng_); break;
      // Both popularities share |E|, so this is a degree comparison.
      case MechanismKind::popularity: take_thread = graph_.degree(e.thread) >= graph_.degree(e.object); break;
    }
    d.added = take_thread ? Component::of(e.thread) : Component::of(e.object);
    components_.append(*d.added);
    return d;
  }

  double popularity(ThreadId t) const { return share(graph_.degree(t)); }
  double popularity(ObjectId o) const { return share(graph_.degree(o)); }

  const BipartiteGraph& graph() const noexcept { return graph_; }
  const ComponentSet& components() const noexcept { return components_; }
  std::size_t edge_count() const noexcept { return graph_.edge_count(); }
  const Mechanism& mechanism() const noexcept { return mechanism_; }

 private:
  double share(std::size_t degree) const {
    const auto edges = graph_.edge_count();
    return edges == 0 ? 0.0 : static_cast<double>(degree) / static_cast<double>(edges);
  }

  BipartiteGraph graph_;
  ComponentSet components_;
  Mechanism mechanism_;
  Rng rng_;
};

struct OnlineResult {
  ComponentSet components;
  StampedTrace stamped;
  std::vector<Decision> decisions;
};

/// Reveals every event in order, stamping each against the component set as
/// it stands right after that event's reveal. Earlier stamps are never
/// rewritten; `stamped.components` is the final set.
inline OnlineResult run_online(const Trace& t, Mechanism mechanism, TieRule tie = TieRule::thread_wins) {
  OnlineState state(t.thread_count(), t.object_count(), mechanism);
  Stamper stamper(t.thread_count(), t.object_count(), tie);
  OnlineResult out;
  out.decisions.reserve(t.size());
  out.stamped.trace = t;
  out.stamped.stamps.reserve(t.size());
  out.stamped.incremented.reserve(t.size());
  for (const Event& e : t.events()) {
    out.decisions.push_back(state.reveal(e));
    auto s = stamper.stamp(e, state.components());
    out.stamped.stamps.push_back(std::move(s.clock));
    out.stamped.incremented.push_back(s.incremented);
  }
  out.components = state.components();
  out.stamped.components = state.components();
  return out;
}

/// One line per event: `<idx> <thread> <object> <t:id | o:id | ->`.
inline void write_decision_log(std::ostream& out, const std::vector<Decision>& decisions) {
  for (const Decision& d : decisions) {
    out << d.index << ' ' << to_index(d.thread) << ' ' << to_index(d.object) << ' '
        << (d.added ? to_string(*d.added) : std::string("-")) << '\n';
  }
}

}  // namespace mixclock
