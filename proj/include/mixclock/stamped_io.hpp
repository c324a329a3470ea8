#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "mixclock/clock.hpp"
#include "mixclock/parse_error.hpp"

namespace mixclock {

// Stamped trace format:
//
//   components <t|o>:<id> ...
//   <thread-id> <object-id> | <c1> <c2> ... <ck>
//
// Counters follow the order of the components line. Blank lines and '#'
// comments are ignored. Thread and object counts are not stored; on reading
// they are taken as one past the largest id used by an event.

inline void write_stamped(std::ostream& out, const StampedTrace& st) {
  out << "components";
  for (Component c : st.components) out << ' ' << to_string(c);
  out << '\n';
  for (std::size_t i = 0; i < st.trace.size(); ++i) {
    const Event& e = st.trace[i];
    out << to_index(e.thread) << ' ' << to_index(e.object) << " |";
    for (std::uint64_t v : st.stamps.at(i).dense(st.components)) out << ' ' << v;
    out << '\n';
  }
}

inline void write_stamped(const std::filesystem::path& path, const StampedTrace& st) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write stamped trace " + path.string());
  write_stamped(out, st);
}

namespace detail {

inline Component parse_component(const std::string& token, std::size_t line_no) {
  if (token.size() < 3 || (token[0] != 't' && token[0] != 'o') || token[1] != ':' ||
      token.find_first_not_of("0123456789", 2) != std::string::npos || token.size() > 12)
    throw ParseError(line_no, "bad component '" + token + "', expected t:<id> or o:<id>");
  const unsigned long long id = std::stoull(token.substr(2));
  if (id > 0xFFFFFFFFULL) throw ParseError(line_no, "component id too large in '" + token + "'");
  return {token[0] == 't' ? Side::thread : Side::object, static_cast<std::uint32_t>(id)};
}

}  // namespace detail

inline StampedTrace read_stamped(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  ComponentSet components;
  std::vector<Edge> edges;
  std::vector<MixedClock> stamps;

  while (std::getline(in, line)) {
    ++line_no;
    if (detail::is_blank_or_comment(line)) continue;
    std::istringstream fields(line);
    if (!have_header) {
      std::string keyword, token;
      if (!(fields >> keyword) || keyword != "components")
        throw ParseError(line_no, "expected header 'components <t|o>:<id> ...'");
      while (fields >> token) {
        if (!components.append(detail::parse_component(token, line_no)))
          throw ParseError(line_no, "duplicate component '" + token + "'");
      }
      have_header = true;
      continue;
    }

    long long t = -1, o = -1;
    std::string bar;
    if (!(fields >> t >> o >> bar) || bar != "|")
      throw ParseError(line_no, "expected '<thread-id> <object-id> | <counters>'");
    if (t < 0 || t > 0xFFFFFFFFLL || o < 0 || o > 0xFFFFFFFFLL) throw ParseError(line_no, "id out of range");
    MixedClock clock;
    std::size_t k = 0;
    std::string token;
    while (fields >> token) {
      if (token.find_first_not_of("0123456789") != std::string::npos || token.size() > 19)
        throw ParseError(line_no, "bad counter '" + token + "'");
      if (k >= components.size())
        throw ParseError(line_no, "more counters than the " + std::to_string(components.size()) + " components");
      clock.set(components[k++], std::stoull(token));
    }
    if (k != components.size())
      throw ParseError(line_no, "expected " + std::to_string(components.size()) + " counters, got " +
                                    std::to_string(k));
    edges.push_back({ThreadId(static_cast<std::uint32_t>(t)), ObjectId(static_cast<std::uint32_t>(o))});
    stamps.push_back(std::move(clock));
  }
  if (!have_header) throw ParseError(line_no + 1, "missing header 'components ...'");

  std::size_t n = 0, m = 0;
  for (const Edge& e : edges) {
    n = std::max<std::size_t>(n, to_index(e.thread) + 1);
    m = std::max<std::size_t>(m, to_index(e.object) + 1);
  }
  StampedTrace st{Trace(n, m), std::move(components), std::move(stamps), {}};
  for (const Edge& e : edges) st.trace.append(e);
  return st;
}

inline StampedTrace read_stamped(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open stamped trace " + path.string());
  return read_stamped(in);
}

}  // namespace mixclock
