#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>

namespace mixclock {

/// Thread and object identifiers live in separate namespaces; an id is only
/// meaningful together with its side.
enum class ThreadId : std::uint32_t {};
enum class ObjectId : std::uint32_t {};

constexpr std::uint32_t to_index(ThreadId t) noexcept { return static_cast<std::uint32_t>(t); }
constexpr std::uint32_t to_index(ObjectId o) noexcept { return static_cast<std::uint32_t>(o); }

/// A (thread, object) pair: an edge of the interaction graph, or the
/// participants of one event.
struct Edge {
  ThreadId thread;
  ObjectId object;

  friend constexpr auto operator<=>(const Edge&, const Edge&) = default;
};

enum class Side : std::uint8_t { thread, object };

/// A clock component: either a thread or an object.
struct Component {
  Side side;
  std::uint32_t id;

  static constexpr Component of(ThreadId t) noexcept { return {Side::thread, to_index(t)}; }
  static constexpr Component of(ObjectId o) noexcept { return {Side::object, to_index(o)}; }

  friend constexpr auto operator<=>(const Component&, const Component&) = default;
};

/// "t:3" / "o:7"
inline std::string to_string(Component c) {
  return (c.side == Side::thread ? "t:" : "o:") + std::to_string(c.id);
}

}  // namespace mixclock

template <>
struct std::hash<mixclock::Component> {
  std::size_t operator()(mixclock::Component c) const noexcept {
    return std::hash<std::uint64_t>{}((static_cast<std::uint64_t>(c.side) << 32) | c.id);
  }
};
