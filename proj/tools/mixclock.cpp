// mixclock: generate traces, compute offline/online mixed clocks, check
// stamped traces and run size experiments.
//
// Exit codes: 0 success, 1 check failure, 2 usage or input error.

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "mixclock/mixclock.hpp"

namespace fs = std::filesystem;
using namespace mixclock;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_check_failed = 1;
constexpr int exit_usage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string join(const ComponentSet& set) {
  std::string out;
  for (Component c : set) {
    if (!out.empty()) out += ' ';
    out += to_string(c);
  }
  return out;
}

void print_sides(std::ostream& out, const BipartiteGraph& g) {
  out << "threads: " << g.thread_count() << " (active " << g.active_thread_count() << ")\n"
      << "objects: " << g.object_count() << " (active " << g.active_object_count() << ")\n"
      << "naive baseline: " << std::min(g.thread_count(), g.object_count()) << " (active "
      << std::min(g.active_thread_count(), g.active_object_count()) << ")\n";
}

struct GenOptions {
  std::string scenario = "uniform";
  std::size_t threads = 0;
  std::size_t objects = 0;
  double density = -1;
  double popular_fraction = NonuniformParams{}.popular_fraction;
  double boost = NonuniformParams{}.boost;
  std::uint64_t seed = 1;
  std::string out;
};

int cmd_gen(const GenOptions& o) {
  const auto scenario = parse_scenario(o.scenario);
  if (!scenario) throw UsageError("unknown scenario '" + o.scenario + "'");
  const BipartiteGraph g =
      trial_graph(*scenario, o.threads, o.objects, o.density, {o.popular_fraction, o.boost}, o.seed);
  const Trace t = graph_to_trace(g, trial_order_seed(o.seed));
  if (o.out.empty() || o.out == "-") {
    write_trace(std::cout, t);
  } else {
    write_trace(fs::path(o.out), t);
    std::cout << "threads " << g.thread_count() << " objects " << g.object_count() << " edges "
              << g.edge_count() << " seed " << o.seed << '\n';
  }
  return exit_ok;
}

int cmd_offline(const std::string& trace_path, std::string out) {
  const Trace t = read_trace(fs::path(trace_path));
  const BipartiteGraph g = build_bigraph(t);
  const ComponentSet components = offline_clock(t);
  if (out.empty()) out = trace_path + ".stamped";
  write_stamped(fs::path(out), stamp(t, components));
  std::cout << "components: " << join(components) << '\n' << "size: " << components.size() << '\n';
  print_sides(std::cout, g);
  std::cout << "stamps: " << out << '\n';
  return exit_ok;
}

int cmd_online(const std::string& trace_path, const std::string& mechanism, std::uint64_t seed, std::string out,
               std::string log) {
  const auto kind = parse_mechanism(mechanism);
  if (!kind) throw UsageError("unknown mechanism '" + mechanism + "'");
  const Trace t = read_trace(fs::path(trace_path));
  const OnlineResult r = run_online(t, {*kind, seed});
  if (out.empty()) out = trace_path + "." + mechanism + ".stamped";
  if (log.empty()) log = out + ".decisions";
  write_stamped(fs::path(out), r.stamped);
  std::ofstream log_file(log, std::ios::binary);
  if (!log_file) throw std::runtime_error("cannot write decision log " + log);
  write_decision_log(log_file, r.decisions);
  std::cout << "mechanism: " << mechanism << '\n'
            << "components: " << join(r.components) << '\n'
            << "size: " << r.components.size() << '\n';
  print_sides(std::cout, build_bigraph(t));
  std::cout << "stamps: " << out << '\n' << "decisions: " << log << '\n';
  return exit_ok;
}

int cmd_check(const std::string& path) {
  const StampedTrace st = read_stamped(fs::path(path));
  const ValidationReport report = validate(st);
  if (report.passed()) {
    std::cout << "PASS " << st.trace.size() << " events, " << report.pairs_checked << " ordered pairs\n";
    return exit_ok;
  }
  constexpr std::size_t shown = 100;
  std::cout << "FAIL " << report.violations.size() << " violating pairs\n";
  for (std::size_t i = 0; i < report.violations.size() && i < shown; ++i) {
    const Violation& v = report.violations[i];
    std::cout << "  (" << v.from << ", " << v.to << ") happened-before=" << v.happened_before
              << " clock-less=" << v.clock_less << '\n';
  }
  if (report.violations.size() > shown) std::cout << "  ... " << report.violations.size() - shown << " more\n";
  return exit_check_failed;
}

int cmd_experiment(const std::string& config_path, const std::map<std::string, std::string>& inline_settings,
                   const std::string& out, std::string summary) {
  ExperimentConfig cfg;
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) throw std::runtime_error("cannot open config " + config_path);
    cfg = read_config(in);
  }
  for (const auto& [key, value] : inline_settings) apply_setting(cfg, key, value);

  const auto records = run_experiment(cfg);
  if (summary.empty()) {
    const fs::path p(out);
    summary = (p.parent_path() / (p.stem().string() + "_summary.csv")).string();
  }
  {
    std::ofstream csv(out, std::ios::binary);
    if (!csv) throw std::runtime_error("cannot write " + out);
    write_csv(csv, records);
  }
  {
    std::ofstream csv(summary, std::ios::binary);
    if (!csv) throw std::runtime_error("cannot write " + summary);
    write_summary_csv(csv, summarize(records));
  }
  std::cout << "rows: " << records.size() << '\n' << "csv: " << out << '\n' << "summary: " << summary << '\n';
  return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mixed thread/object vector clocks"};
  app.require_subcommand(1);

  GenOptions gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a random trace");
  gen_cmd->add_option("--scenario", gen.scenario, "uniform | nonuniform")->capture_default_str();
  gen_cmd->add_option("--threads", gen.threads, "Thread count")->required();
  gen_cmd->add_option("--objects", gen.objects, "Object count")->required();
  gen_cmd->add_option("--density", gen.density, "Edge probability in [0, 1]")->required();
  gen_cmd->add_option("--popular-fraction", gen.popular_fraction, "Nonuniform: popular share")->capture_default_str();
  gen_cmd->add_option("--boost", gen.boost, "Nonuniform: popular edge probability multiplier")->capture_default_str();
  gen_cmd->add_option("--seed", gen.seed, "Random seed")->capture_default_str();
  gen_cmd->add_option("--out", gen.out, "Trace file (stdout if omitted)");

  std::string trace_path, out_path, log_path, mechanism;
  std::uint64_t seed = 0;
  auto* offline_cmd = app.add_subcommand("offline", "Minimum mixed clock of a trace");
  offline_cmd->add_option("trace", trace_path, "Trace file")->required();
  offline_cmd->add_option("--out", out_path, "Stamped trace output (default <trace>.stamped)");

  auto* online_cmd = app.add_subcommand("online", "Online component selection over a trace");
  online_cmd->add_option("trace", trace_path, "Trace file")->required();
  online_cmd->add_option("--mechanism", mechanism, "naive-threads | naive-objects | random | popularity")
      ->required();
  online_cmd->add_option("--seed", seed, "Seed for the random mechanism")->capture_default_str();
  online_cmd->add_option("--out", out_path, "Stamped trace output (default <trace>.<mechanism>.stamped)");
  online_cmd->add_option("--log", log_path, "Decision log (default <out>.decisions)");

  std::string stamped_path;
  auto* check_cmd = app.add_subcommand("check", "Validate a stamped trace against happened-before");
  check_cmd->add_option("stamped", stamped_path, "Stamped trace file")->required();

  std::string config_path, csv_path = "experiment.csv", summary_path;
  std::map<std::string, std::string> settings;
  auto* exp_cmd = app.add_subcommand("experiment", "Clock-size experiment, written as CSV");
  exp_cmd->add_option("--config", config_path, "key=value config file");
  exp_cmd->add_option("--out", csv_path, "Per-trial CSV")->capture_default_str();
  exp_cmd->add_option("--summary", summary_path, "Per-point means CSV (default <out>_summary.csv)");
  const std::map<std::string, std::string> inline_keys{
      {"--scenario", "scenario"},   {"--mechanisms", "mechanisms"},
      {"--sweep", "sweep"},         {"--threads", "threads"},
      {"--objects", "objects"},     {"--densities", "densities"},
      {"--nodes", "nodes"},         {"--density", "density"},
      {"--trials", "trials"},       {"--seed", "seed"},
      {"--popular-fraction", "popular_fraction"}, {"--boost", "boost"}};
  for (const auto& [flag, key] : inline_keys) {
    exp_cmd->add_option_function<std::string>(flag, [&settings, key = key](const std::string& v) { settings[key] = v; },
                                              "Overrides '" + key + "' from the config");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_usage;
  }

  try {
    if (*gen_cmd) return cmd_gen(gen);
    if (*offline_cmd) return cmd_offline(trace_path, out_path);
    if (*online_cmd) return cmd_online(trace_path, mechanism, seed, out_path, log_path);
    if (*check_cmd) return cmd_check(stamped_path);
    if (*exp_cmd) return cmd_experiment(config_path, settings, csv_path, summary_path);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return exit_usage;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return exit_usage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << '\n';
    return exit_usage;
  } catch (const std::out_of_range& e) {
    std::cerr << "out of range: " << e.what() << '\n';
    return exit_usage;
  } catch (const std::logic_error& e) {
    std::cerr << "experiment aborted: " << e.what() << '\n';
    return exit_check_failed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_usage;
  }
  return exit_usage;
}
