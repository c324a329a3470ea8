#include <gtest/gtest.h>

#include <sstream>

#include "mixclock/experiment.hpp"

using namespace mixclock;

namespace {

ExperimentConfig small_config() {
  ExperimentConfig cfg;
  cfg.threads = 12;
  cfg.objects = 10;
  cfg.densities = {0.05, 0.3};
  cfg.trials = 4;
  cfg.base_seed = 9;
  return cfg;
}

std::string csv_of(const std::vector<ExperimentRecord>& rows) {
  std::ostringstream out;
  write_csv(out, rows);
  return out.str();
}

TEST(Experiment, SinglePointSingleTrialGivesOneRowPerMethod) {
  ExperimentConfig cfg;
  cfg.scenarios = {Scenario::uniform};
  cfg.densities = {0.05};
  cfg.trials = 1;
  const auto rows = run_experiment(cfg);
  ASSERT_EQ(rows.size(), 5u);
  EXPECT_EQ(rows[0].mechanism, "offline");
  for (std::size_t i = 0; i < all_mechanisms.size(); ++i) EXPECT_EQ(rows[i + 1].mechanism, name(all_mechanisms[i]));
  for (const auto& r : rows) {
    EXPECT_EQ(r.seed, cfg.base_seed);
    EXPECT_EQ(r.edge_count, rows[0].edge_count);
  }
}

TEST(Experiment, RerunIsByteIdentical) {
  EXPECT_EQ(csv_of(run_experiment(small_config())), csv_of(run_experiment(small_config())));
}

TEST(Experiment, RowsSortedAndDominated) {
  const auto cfg = small_config();
  const auto rows = run_experiment(cfg);
  ASSERT_EQ(rows.size(), 2u * 2u * 4u * 5u);
  // Blocks of (scenario, method); within each, points then trials.
  EXPECT_EQ(rows.front().scenario, Scenario::uniform);
  EXPECT_EQ(rows.back().scenario, Scenario::nonuniform);
  EXPECT_EQ(rows.back().mechanism, "popularity");
  EXPECT_EQ(rows[0].density, 0.05);
  EXPECT_EQ(rows[4].density, 0.3);
  EXPECT_EQ(rows[8].mechanism, "naive-threads");

  for (const auto& r : rows) {
    EXPECT_LE(r.clock_size, r.n_threads + r.m_objects);
    if (r.mechanism != "offline") continue;
    for (const auto& other : rows) {
      if (other.scenario == r.scenario && other.density == r.density && other.seed == r.seed)
        EXPECT_LE(r.clock_size, other.clock_size) << other.mechanism;
    }
  }
}

TEST(Experiment, ReplaysFromSeed) {
  const auto cfg = small_config();
  const auto rows = run_experiment(cfg);
  for (const auto& r : rows) {
    if (r.mechanism != "random" || r.scenario != Scenario::nonuniform) continue;
    const auto g = trial_graph(r.scenario, r.n_threads, r.m_objects, r.density, cfg.nonuniform, r.seed);
    const Trace t = graph_to_trace(g, trial_order_seed(r.seed));
    EXPECT_EQ(g.edge_count(), r.edge_count);
    EXPECT_EQ(online_size(t, MechanismKind::random, r.seed), r.clock_size);
  }
}

TEST(Experiment, NodeSweepSetsBothSides) {
  ExperimentConfig cfg;
  cfg.scenarios = {Scenario::nonuniform};
  cfg.mechanisms = {MechanismKind::popularity};
  cfg.sweep = SweepKind::nodes;
  cfg.nodes = {5, 15};
  cfg.density = 0.1;
  cfg.trials = 2;
  const auto rows = run_experiment(cfg);
  ASSERT_EQ(rows.size(), 8u);
  EXPECT_EQ(rows[0].n_threads, 5u);
  EXPECT_EQ(rows[0].m_objects, 5u);
  EXPECT_EQ(rows[3].n_threads, 15u);
  EXPECT_EQ(rows[0].density, 0.1);
}

TEST(Experiment, RejectsInvalidConfigs) {
  ExperimentConfig cfg;
  cfg.trials = 0;
  EXPECT_THROW(run_experiment(cfg), std::invalid_argument);
  cfg = {};
  cfg.densities = {};
  EXPECT_THROW(run_experiment(cfg), std::invalid_argument);
  cfg = {};
  cfg.densities = {0.1, 1.2};
  EXPECT_THROW(run_experiment(cfg), std::invalid_argument);
  cfg = {};
  cfg.nonuniform.boost = 0.5;
  EXPECT_THROW(run_experiment(cfg), std::invalid_argument);
}

TEST(Summary, MeansAndNaiveMin) {
  const std::vector<ExperimentRecord> rows{
      {Scenario::uniform, "offline", 4, 4, 0.5, 1, 6, 3},
      {Scenario::uniform, "offline", 4, 4, 0.5, 2, 8, 4},
      {Scenario::uniform, "naive-threads", 4, 4, 0.5, 1, 6, 4},
      {Scenario::uniform, "naive-threads", 4, 4, 0.5, 2, 8, 3},
      {Scenario::uniform, "naive-objects", 4, 4, 0.5, 1, 6, 3},
      {Scenario::uniform, "naive-objects", 4, 4, 0.5, 2, 8, 4},
  };
  const auto summary = summarize(rows);
  ASSERT_EQ(summary.size(), 4u);
  EXPECT_DOUBLE_EQ(mean_size(summary, Scenario::uniform, "offline", 4, 4, 0.5), 3.5);
  EXPECT_DOUBLE_EQ(mean_size(summary, Scenario::uniform, "naive-threads", 4, 4, 0.5), 3.5);
  EXPECT_DOUBLE_EQ(mean_size(summary, Scenario::uniform, "naive-min", 4, 4, 0.5), 3.0);
  EXPECT_EQ(summary[0].trials, 2u);
  EXPECT_DOUBLE_EQ(summary[0].mean_edge_count, 7.0);
  EXPECT_THROW(mean_size(summary, Scenario::nonuniform, "offline", 4, 4, 0.5), std::out_of_range);

  std::ostringstream out;
  write_summary_csv(out, summary);
  EXPECT_EQ(out.str().substr(0, out.str().find('\n')),
            "scenario,mechanism,n_threads,m_objects,density,trials,mean_edge_count,mean_clock_size");
  EXPECT_NE(out.str().find("uniform,naive-min,4,4,0.5,2,7,3\n"), std::string::npos);
}

TEST(Csv, HeaderAndNumberFormat) {
  const std::vector<ExperimentRecord> rows{{Scenario::nonuniform, "random", 50, 50, 0.05, 17, 120, 44}};
  EXPECT_EQ(csv_of(rows),
            "scenario,mechanism,n_threads,m_objects,density,seed,edge_count,clock_size\n"
            "nonuniform,random,50,50,0.05,17,120,44\n");
}

TEST(Config, ParsesKeyValueLines) {
  std::istringstream in(
      "# sweep nodes\n"
      "scenario = uniform\n"
      "mechanisms = popularity, random\n"
      "sweep = nodes\n"
      "nodes = 10,20,30\n"
      "density = 0.05\n"
      "trials = 7\n"
      "seed = 100\n"
      "popular_fraction = 0.1\n"
      "boost = 3\n");
  const ExperimentConfig cfg = read_config(in);
  EXPECT_EQ(cfg.scenarios, std::vector<Scenario>{Scenario::uniform});
  EXPECT_EQ(cfg.mechanisms, (std::vector<MechanismKind>{MechanismKind::popularity, MechanismKind::random}));
  EXPECT_EQ(cfg.sweep, SweepKind::nodes);
  EXPECT_EQ(cfg.nodes, (std::vector<std::size_t>{10, 20, 30}));
  EXPECT_EQ(cfg.trials, 7u);
  EXPECT_EQ(cfg.base_seed, 100u);
  EXPECT_DOUBLE_EQ(cfg.nonuniform.popular_fraction, 0.1);
  EXPECT_DOUBLE_EQ(cfg.nonuniform.boost, 3.0);
}

TEST(Config, ErrorsNameTheLine) {
  for (auto [text, line] : std::vector<std::pair<std::string, std::size_t>>{
           {"trials = 3\nbogus = 1\n", 2}, {"trials\n", 1}, {"trials = x\n", 1}, {"\nscenario = weird\n", 2},
           {"mechanisms = naive\n", 1}, {"sweep = both\n", 1}}) {
    std::istringstream in(text);
    try {
      read_config(in);
      ADD_FAILURE() << text;
    } catch (const ParseError& e) {
      EXPECT_EQ(e.line(), line) << text;
    }
  }
}

}  // namespace
