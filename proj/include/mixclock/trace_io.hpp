#pragma once

#include <filesystem>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

#include "mixclock/parse_error.hpp"
#include "mixclock/trace.hpp"

namespace mixclock {

// Trace file format:
//
//   threads <n> objects <m>
//   <thread-id> <object-id>
//   ...
//
// Ids are 0-based. Blank lines and lines starting with '#' are ignored. The
// order of event lines is the event order.

inline Trace read_trace(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  Trace trace;

  while (std::getline(in, line)) {
    ++line_no;
    if (detail::is_blank_or_comment(line)) continue;
    std::istringstream fields(line);
    std::string rest;
    if (!have_header) {
      std::string kw_threads, kw_objects;
      long long n = -1, m = -1;
      if (!(fields >> kw_threads >> n >> kw_objects >> m) || kw_threads != "threads" || kw_objects != "objects" ||
          (fields >> rest))
        throw ParseError(line_no, "expected header 'threads <n> objects <m>'");
      if (n < 0 || m < 0) throw ParseError(line_no, "negative thread or object count");
      trace = Trace(static_cast<std::size_t>(n), static_cast<std::size_t>(m));
      have_header = true;
      continue;
    }
    long long t = -1, o = -1;
    if (!(fields >> t >> o) || (fields >> rest))
      throw ParseError(line_no, "expected '<thread-id> <object-id>'");
    if (t < 0 || static_cast<unsigned long long>(t) >= trace.thread_count())
      throw ParseError(line_no, "thread id " + std::to_string(t) + " outside declared " +
                                    std::to_string(trace.thread_count()) + " threads");
    if (o < 0 || static_cast<unsigned long long>(o) >= trace.object_count())
      throw ParseError(line_no, "object id " + std::to_string(o) + " outside declared " +
                                    std::to_string(trace.object_count()) + " objects");
    trace.append(ThreadId(static_cast<std::uint32_t>(t)), ObjectId(static_cast<std::uint32_t>(o)));
  }
  if (!have_header) throw ParseError(line_no + 1, "missing header 'threads <n> objects <m>'");
  return trace;
}

inline Trace read_trace(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open trace file " + path.string());
  return read_trace(in);
}

inline void write_trace(std::ostream& out, const Trace& t) {
  out << "threads " << t.thread_count() << " objects " << t.object_count() << '\n';
  for (const Event& e : t.events()) out << to_index(e.thread) << ' ' << to_index(e.object) << '\n';
}

inline void write_trace(const std::filesystem::path& path, const Trace& t) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write trace file " + path.string());
  write_trace(out, t);
}

}  // namespace mixclock
