#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "mixclock/bigraph.hpp"
#include "mixclock/generators.hpp"
#include "mixclock/online.hpp"
#include "mixclock/parse_error.hpp"
#include "mixclock/random.hpp"

namespace mixclock {

enum class Scenario { uniform, nonuniform };

constexpr std::string_view name(Scenario s) noexcept { return s == Scenario::uniform ? "uniform" : "nonuniform"; }

inline std::optional<Scenario> parse_scenario(std::string_view s) {
  if (s == "uniform") return Scenario::uniform;
  if (s == "nonuniform") return Scenario::nonuniform;
  return std::nullopt;
}

/// Density sweeps vary density at fixed thread/object counts; node sweeps set
/// threads = objects = each swept count at a fixed density.
enum class SweepKind { density, nodes };

struct ExperimentConfig {
  std::vector<Scenario> scenarios{Scenario::uniform, Scenario::nonuniform};
  std::vector<MechanismKind> mechanisms{all_mechanisms.begin(), all_mechanisms.end()};
  SweepKind sweep = SweepKind::density;
  std::size_t threads = 50;
  std::size_t objects = 50;
  std::vector<double> densities{0.01, 0.02, 0.05, 0.1, 0.2, 0.3};
  std::vector<std::size_t> nodes{10, 20, 30, 40, 50, 60, 70, 80, 90, 100};
  double density = 0.05;
  std::size_t trials = 100;
  std::uint64_t base_seed = 1;
  NonuniformParams nonuniform;

  std::size_t point_count() const noexcept {
    return sweep == SweepKind::density ? densities.size() : nodes.size();
  }

  /// (threads, objects, density) of sweep point `i`.
  std::tuple<std::size_t, std::size_t, double> point(std::size_t i) const {
    if (sweep == SweepKind::density) return {threads, objects, densities.at(i)};
    return {nodes.at(i), nodes.at(i), density};
  }

  void validate() const {
    if (trials < 1) throw std::invalid_argument("trials must be at least 1");
    if (scenarios.empty()) throw std::invalid_argument("no scenario selected");
    if (point_count() == 0) throw std::invalid_argument("sweep list is empty");
    for (std::size_t i = 0; i < point_count(); ++i) {
      auto [n, m, d] = point(i);
      if (n == 0 || m == 0) throw std::invalid_argument("thread and object counts must be positive");
      if (!(d >= 0.0 && d <= 1.0)) throw std::invalid_argument("density " + std::to_string(d) + " outside [0, 1]");
      if (std::find(scenarios.begin(), scenarios.end(), Scenario::nonuniform) != scenarios.end())
        nonuniform_probabilities(n, m, d, nonuniform);
    }
  }
};

/// One trial of one method. `mechanism` is "offline" or a mechanism name.
struct ExperimentRecord {
  Scenario scenario;
  std::string mechanism;
  std::size_t n_threads;
  std::size_t m_objects;
  double density;
  std::uint64_t seed;
  std::size_t edge_count;
  std::size_t clock_size;

  friend bool operator==(const ExperimentRecord&, const ExperimentRecord&) = default;
};

inline constexpr std::string_view offline_method = "offline";

/// Graph and event order of one trial. The trace order comes from a sub-seed
/// of the trial seed, so `seed` alone replays the trial.
inline BipartiteGraph trial_graph(Scenario s, std::size_t n, std::size_t m, double density,
                                  const NonuniformParams& params, std::uint64_t seed) {
  return s == Scenario::uniform ? gen_uniform(n, m, density, seed) : gen_nonuniform(n, m, density, params, seed);
}

inline std::uint64_t trial_order_seed(std::uint64_t seed) noexcept { return derive_seed(seed, 0); }

/// Final component count of `kind` on `t`. Random draws from `seed`.
inline std::size_t online_size(const Trace& t, MechanismKind kind, std::uint64_t seed) {
  OnlineState state(t.thread_count(), t.object_count(), {kind, seed});
  for (const Event& e : t.events()) state.reveal(e);
  return state.components().size();
}

/**
 * Runs every (scenario, sweep point, trial) with seed = base_seed + trial,
 * applying the offline cover and each configured mechanism to the same
 * trace. Rows come back sorted by scenario, method (offline first, then the
 * configured mechanism order), sweep point and trial.
 *
 * Throws std::logic_error naming the configuration if a mechanism ever beats
 * the offline optimum.
 */
inline std::vector<ExperimentRecord> run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  struct Keyed {
    std::tuple<std::size_t, std::size_t, std::size_t, std::size_t> key;
    ExperimentRecord record;
  };
  std::vector<Keyed> rows;
  rows.reserve(cfg.scenarios.size() * cfg.point_count() * cfg.trials * (cfg.mechanisms.size() + 1));

  for (std::size_t si = 0; si < cfg.scenarios.size(); ++si) {
    const Scenario scenario = cfg.scenarios[si];
    for (std::size_t pi = 0; pi < cfg.point_count(); ++pi) {
      const auto [n, m, density] = cfg.point(pi);
      for (std::size_t trial = 0; trial < cfg.trials; ++trial) {
        const std::uint64_t seed = cfg.base_seed + trial;
        const BipartiteGraph g = trial_graph(scenario, n, m, density, cfg.nonuniform, seed);
        const Trace t = graph_to_trace(g, trial_order_seed(seed));
        const Matching matching = max_matching(g);
        const std::size_t optimum = matching.size();
        auto emit = [&](std::size_t method, std::string_view label, std::size_t size) {
          if (size < optimum)
            throw std::logic_error(std::string(label) + " produced " + std::to_string(size) +
                                   " components, below the optimum " + std::to_string(optimum) + " (" +
                                   std::string(name(scenario)) + ", n=" + std::to_string(n) +
                                   ", m=" + std::to_string(m) + ", density=" + std::to_string(density) +
                                   ", seed=" + std::to_string(seed) + ")");
          rows.push_back({{si, method, pi, trial},
                          {scenario, std::string(label), n, m, density, seed, g.edge_count(), size}});
        };
        emit(0, offline_method, min_vertex_cover(g, matching).size());
        for (std::size_t mi = 0; mi < cfg.mechanisms.size(); ++mi)
          emit(mi + 1, name(cfg.mechanisms[mi]), online_size(t, cfg.mechanisms[mi], seed));
      }
    }
  }
  std::stable_sort(rows.begin(), rows.end(), [](const Keyed& a, const Keyed& b) { return a.key < b.key; });
  std::vector<ExperimentRecord> out;
  out.reserve(rows.size());
  for (auto& r : rows) out.push_back(std::move(r.record));
  return out;
}

/// Shortest round-trip decimal form, independent of stream state and locale.
inline std::string format_number(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

inline constexpr std::string_view csv_header = "scenario,mechanism,n_threads,m_objects,density,seed,edge_count,clock_size";

inline void write_csv(std::ostream& out, const std::vector<ExperimentRecord>& records) {
  out << csv_header << '\n';
  for (const auto& r : records) {
    out << name(r.scenario) << ',' << r.mechanism << ',' << r.n_threads << ',' << r.m_objects << ','
        << format_number(r.density) << ',' << r.seed << ',' << r.edge_count << ',' << r.clock_size << '\n';
  }
}

/// Per-point mean over trials of one method.
struct SummaryRow {
  Scenario scenario;
  std::string mechanism;
  std::size_t n_threads;
  std::size_t m_objects;
  double density;
  std::size_t trials;
  double mean_edge_count;
  double mean_clock_size;
};

inline constexpr std::string_view naive_min_method = "naive-min";

/**
 * Means per (scenario, method, point), in first-appearance order. When both
 * naive variants are present a "naive-min" row is added per point, averaging
 * the per-trial min(naive-threads, naive-objects).
 */
inline std::vector<SummaryRow> summarize(const std::vector<ExperimentRecord>& records) {
  using PointKey = std::tuple<Scenario, std::size_t, std::size_t, double>;
  struct Acc {
    SummaryRow row;
    double edges = 0;
    double size = 0;
  };
  std::vector<Acc> acc;
  std::map<std::tuple<PointKey, std::string>, std::size_t> slot;
  std::map<std::tuple<PointKey, std::uint64_t>, std::pair<std::optional<std::size_t>, std::optional<std::size_t>>>
      naive;  // (naive-threads, naive-objects) per trial

  auto add = [&](const PointKey& pk, const ExperimentRecord& r, std::string_view method, double edges,
                 double size) {
    auto [it, fresh] = slot.try_emplace({pk, std::string(method)}, acc.size());
    if (fresh)
      acc.push_back({{r.scenario, std::string(method), r.n_threads, r.m_objects, r.density, 0, 0, 0}});
    Acc& a = acc[it->second];
    ++a.row.trials;
    a.edges += edges;
    a.size += size;
  };

  for (const auto& r : records) {
    const PointKey pk{r.scenario, r.n_threads, r.m_objects, r.density};
    add(pk, r, r.mechanism, static_cast<double>(r.edge_count), static_cast<double>(r.clock_size));
    if (r.mechanism == name(MechanismKind::naive_threads)) naive[{pk, r.seed}].first = r.clock_size;
    if (r.mechanism == name(MechanismKind::naive_objects)) naive[{pk, r.seed}].second = r.clock_size;
  }
  for (const auto& r : records) {
    if (r.mechanism != name(MechanismKind::naive_threads)) continue;
    const PointKey pk{r.scenario, r.n_threads, r.m_objects, r.density};
    const auto& [threads, objects] = naive.at({pk, r.seed});
    if (threads && objects)
      add(pk, r, naive_min_method, static_cast<double>(r.edge_count),
          static_cast<double>(std::min(*threads, *objects)));
  }

  std::vector<SummaryRow> out;
  out.reserve(acc.size());
  for (auto& a : acc) {
    a.row.mean_edge_count = a.edges / static_cast<double>(a.row.trials);
    a.row.mean_clock_size = a.size / static_cast<double>(a.row.trials);
    out.push_back(a.row);
  }
  return out;
}

inline void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows) {
  out << "scenario,mechanism,n_threads,m_objects,density,trials,mean_edge_count,mean_clock_size\n";
  for (const auto& r : rows) {
    out << name(r.scenario) << ',' << r.mechanism << ',' << r.n_threads << ',' << r.m_objects << ','
        << format_number(r.density) << ',' << r.trials << ',' << format_number(r.mean_edge_count) << ','
        << format_number(r.mean_clock_size) << '\n';
  }
}

/// Looks up the mean clock size of `method` at one point; throws if absent.
inline double mean_size(const std::vector<SummaryRow>& rows, Scenario s, std::string_view method, std::size_t n,
                        std::size_t m, double density) {
  for (const auto& r : rows)
    if (r.scenario == s && r.mechanism == method && r.n_threads == n && r.m_objects == m && r.density == density)
      return r.mean_clock_size;
  throw std::out_of_range("no summary row for " + std::string(method));
}

namespace detail {

inline std::vector<std::string> split_list(std::string_view s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in{std::string(s)};
  while (std::getline(in, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
  }
  return out;
}

template <typename T>
T parse_value(std::string_view s) {
  T v{};
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc{} || ptr != end) throw std::invalid_argument("bad number '" + std::string(s) + "'");
  return v;
}

}  // namespace detail

/**
 * Applies one `key=value` setting. Keys: scenario, mechanisms, sweep
 * (density|nodes), threads, objects, densities, nodes, density, trials, seed,
 * popular_fraction, boost. List values are comma-separated.
 */
inline void apply_setting(ExperimentConfig& cfg, std::string_view key, std::string_view value) {
  using detail::parse_value;
  using detail::split_list;
  if (key == "scenario" || key == "scenarios") {
    cfg.scenarios.clear();
    for (const auto& s : split_list(value)) {
      auto sc = parse_scenario(s);
      if (!sc) throw std::invalid_argument("unknown scenario '" + s + "'");
      cfg.scenarios.push_back(*sc);
    }
  } else if (key == "mechanisms" || key == "mechanism") {
    cfg.mechanisms.clear();
    for (const auto& s : split_list(value)) {
      auto k = parse_mechanism(s);
      if (!k) throw std::invalid_argument("unknown mechanism '" + s + "'");
      cfg.mechanisms.push_back(*k);
    }
  } else if (key == "sweep") {
    if (value == "density")
      cfg.sweep = SweepKind::density;
    else if (value == "nodes")
      cfg.sweep = SweepKind::nodes;
    else
      throw std::invalid_argument("sweep must be 'density' or 'nodes'");
  } else if (key == "threads") {
    cfg.threads = parse_value<std::size_t>(value);
  } else if (key == "objects") {
    cfg.objects = parse_value<std::size_t>(value);
  } else if (key == "densities") {
    cfg.densities.clear();
    for (const auto& s : split_list(value)) cfg.densities.push_back(parse_value<double>(s));
  } else if (key == "nodes") {
    cfg.nodes.clear();
    for (const auto& s : split_list(value)) cfg.nodes.push_back(parse_value<std::size_t>(s));
  } else if (key == "density") {
    cfg.density = parse_value<double>(value);
  } else if (key == "trials") {
    cfg.trials = parse_value<std::size_t>(value);
  } else if (key == "seed") {
    cfg.base_seed = parse_value<std::uint64_t>(value);
  } else if (key == "popular_fraction") {
    cfg.nonuniform.popular_fraction = parse_value<double>(value);
  } else if (key == "boost") {
    cfg.nonuniform.boost = parse_value<double>(value);
  } else {
    throw std::invalid_argument("unknown key '" + std::string(key) + "'");
  }
}

/// Reads `key=value` lines over the defaults; '#' starts a comment line.
inline ExperimentConfig read_config(std::istream& in, ExperimentConfig cfg = {}) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::is_blank_or_comment(line)) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(line_no, "expected key=value");
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    try {
      apply_setting(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    } catch (const std::invalid_argument& err) {
      throw ParseError(line_no, err.what());
    }
  }
  return cfg;
}

}  // namespace mixclock
