#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct CliResult {
  int code;
  std::string out;
};

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("mixclock_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path path(const std::string& name) const { return dir_ / name; }

  CliResult run(const std::string& args) const {
    const fs::path capture = dir_ / "stdout.txt";
    const std::string cmd = std::string(MIXCLOCK_CLI) + " " + args + " > " + capture.string() + " 2>&1";
    const int status = std::system(cmd.c_str());
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(capture)};
  }

  static std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  }

  void write(const std::string& name, const std::string& text) const {
    std::ofstream(path(name), std::ios::binary) << text;
  }

  fs::path dir_;
};

const std::string example = std::string(MIXCLOCK_DATA) + "/example.trace";

TEST_F(Cli, GenWritesReadableDeterministicTrace) {
  const std::string flags = "gen --scenario uniform --threads 50 --objects 50 --density 0.05 --seed 7 --out ";
  const CliResult a = run(flags + path("a.trace").string());
  ASSERT_EQ(a.code, 0) << a.out;
  EXPECT_NE(a.out.find("threads 50 objects 50 edges"), std::string::npos);
  ASSERT_EQ(run(flags + path("b.trace").string()).code, 0);
  EXPECT_EQ(slurp(path("a.trace")), slurp(path("b.trace")));
  EXPECT_EQ(slurp(path("a.trace")).rfind("threads 50 objects 50\n", 0), 0u);

  const CliResult off = run("offline " + path("a.trace").string());
  EXPECT_EQ(off.code, 0) << off.out;
}

TEST_F(Cli, GenNonuniform) {
  const CliResult r = run("gen --scenario nonuniform --threads 20 --objects 30 --density 0.1 --popular-fraction 0.1 "
                    "--boost 5 --seed 3 --out " + path("n.trace").string());
  EXPECT_EQ(r.code, 0) << r.out;
}

TEST_F(Cli, GenRejectsBadDensity) {
  EXPECT_EQ(run("gen --threads 5 --objects 5 --density 1.5 --out " + path("x.trace").string()).code, 2);
  EXPECT_EQ(run("gen --scenario skewed --threads 5 --objects 5 --density 0.5").code, 2);
  EXPECT_EQ(run("gen --threads 5 --density 0.5").code, 2);
}

TEST_F(Cli, OfflineOnExample) {
  const CliResult r = run("offline " + example + " --out " + path("ex.stamped").string());
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("components: t:2 o:2 o:3\n"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("size: 3\n"), std::string::npos);
  EXPECT_NE(r.out.find("naive baseline: 5 (active 4)"), std::string::npos) << r.out;
  EXPECT_EQ(run("check " + path("ex.stamped").string()).code, 0);
}

TEST_F(Cli, OfflineOnStar) {
  write("star.trace", "threads 1 objects 5\n0 0\n0 1\n0 2\n0 3\n0 4\n");
  const CliResult r = run("offline " + path("star.trace").string());
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("size: 1\n"), std::string::npos);
  EXPECT_TRUE(fs::exists(path("star.trace.stamped")));
}

TEST_F(Cli, OfflineMalformedTrace) {
  write("bad.trace", "threads 2 objects 2\n0 1\n7 0\n");
  const CliResult r = run("offline " + path("bad.trace").string());
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find("line 3"), std::string::npos) << r.out;
  EXPECT_EQ(run("offline " + path("missing.trace").string()).code, 2);
}

TEST_F(Cli, OnlineNaiveThreadsOnExample) {
  const CliResult r = run("online " + example + " --mechanism naive-threads --out " + path("nt.stamped").string());
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("size: 4\n"), std::string::npos) << r.out;
  EXPECT_TRUE(fs::exists(path("nt.stamped.decisions")));
  EXPECT_EQ(run("check " + path("nt.stamped").string()).code, 0);
}

TEST_F(Cli, OnlinePopularityIsDeterministic) {
  ASSERT_EQ(run("online " + example + " --mechanism popularity --out " + path("p1").string()).code, 0);
  ASSERT_EQ(run("online " + example + " --mechanism popularity --out " + path("p2").string()).code, 0);
  EXPECT_EQ(slurp(path("p1")), slurp(path("p2")));
  EXPECT_EQ(slurp(path("p1.decisions")), slurp(path("p2.decisions")));
}

TEST_F(Cli, OnlineRandomSeedsValidate) {
  ASSERT_EQ(run("gen --threads 20 --objects 20 --density 0.1 --seed 2 --out " + path("g.trace").string()).code, 0);
  for (const char* seed : {"1", "2"}) {
    const std::string out = path(std::string("r") + seed).string();
    ASSERT_EQ(run("online " + path("g.trace").string() + " --mechanism random --seed " + seed + " --out " + out).code, 0);
    EXPECT_EQ(run("check " + out).code, 0);
  }
}

TEST_F(Cli, OnlineUnknownMechanism) {
  EXPECT_EQ(run("online " + example + " --mechanism greedy").code, 2);
}

TEST_F(Cli, CheckFailsOnCorruptedStamps) {
  write("bad.stamped", "components t:2 o:2 o:3\n2 1 | 1 0 0\n2 3 | 0 0 0\n3 3 | 2 0 1\n");
  const CliResult r = run("check " + path("bad.stamped").string());
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("(0, 1)"), std::string::npos) << r.out;
}

TEST_F(Cli, CheckEmptyAndMalformed) {
  write("empty.stamped", "components\n");
  EXPECT_EQ(run("check " + path("empty.stamped").string()).code, 0);
  write("bad.stamped", "components t:1\n1 0 | 1 1\n");
  const CliResult r = run("check " + path("bad.stamped").string());
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find("line 2"), std::string::npos) << r.out;
}

TEST_F(Cli, ExperimentFromConfigAndFlags) {
  write("exp.cfg", "scenario = uniform,nonuniform\ndensities = 0.05,0.2\nthreads = 10\nobjects = 10\ntrials = 3\n");
  const std::string args = "experiment --config " + path("exp.cfg").string() + " --seed 5 --out ";
  const CliResult a = run(args + path("a.csv").string());
  ASSERT_EQ(a.code, 0) << a.out;
  ASSERT_EQ(run(args + path("b.csv").string()).code, 0);
  EXPECT_EQ(slurp(path("a.csv")), slurp(path("b.csv")));
  EXPECT_EQ(slurp(path("a_summary.csv")), slurp(path("b_summary.csv")));

  const std::string csv = slurp(path("a.csv"));
  EXPECT_EQ(csv.rfind("scenario,mechanism,n_threads,m_objects,density,seed,edge_count,clock_size\n", 0), 0u);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 1 + 2 * 2 * 3 * 5);
  EXPECT_NE(csv.find("uniform,offline,10,10,0.05,5,"), std::string::npos);
}

TEST_F(Cli, ExperimentRejectsBadConfig) {
  write("bad.cfg", "trials = 2\ncolour = blue\n");
  const CliResult r = run("experiment --config " + path("bad.cfg").string() + " --out " + path("x.csv").string());
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find("line 2"), std::string::npos) << r.out;
  EXPECT_EQ(run("experiment --trials 0 --out " + path("y.csv").string()).code, 2);
}

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("--help").code, 0);
}

}  // namespace
