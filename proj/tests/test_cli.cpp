#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "coevo/csv.hpp"

namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "coevo");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = coevo::cli::main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

coevo::CsvTable parse(const std::string& text) {
  std::istringstream is(text);
  return coevo::read_csv(is);
}

fs::path scratch_dir() {
  const auto dir = fs::temp_directory_path() / ("coevo_cli_test_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir;
}

const std::vector<std::string> kSmall{"--topology", "sl", "--n", "64", "--steps", "100", "--window", "10"};

std::vector<std::string> with(std::vector<std::string> head, const std::vector<std::string>& tail = kSmall) {
  head.insert(head.end(), tail.begin(), tail.end());
  return head;
}

}  // namespace

TEST(CliRun, OneRowPerStepPlusInitial) {
  const auto r = invoke(with({"run"}));
  ASSERT_EQ(r.code, 0) << r.err;
  const auto table = parse(r.out);
  EXPECT_EQ(table.rows.size(), 101u);
  EXPECT_EQ(table.rows.front()[0], "0");
  EXPECT_EQ(table.rows.back()[0], "100");
  EXPECT_EQ(table.meta("delta"), "0.1");
  EXPECT_EQ(table.meta("kappa"), "0.1");
  EXPECT_EQ(r.out.find('\r'), std::string::npos);
}

TEST(CliRun, ByteIdenticalOnRepeat) {
  const auto a = invoke(with({"run", "--seed", "99"}));
  const auto b = invoke(with({"run", "--seed", "99"}));
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out, invoke(with({"run", "--seed", "98"})).out);
}

TEST(CliRun, WritesToFile) {
  const auto path = scratch_dir() / "run.csv";
  const auto r = invoke(with({"run", "--out", path.string()}));
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  EXPECT_EQ(buf.str(), invoke(with({"run"})).out);
}

TEST(CliErrors, DistinctExitCodes) {
  const auto range = invoke(with({"run", "--b", "2.5"}));
  EXPECT_EQ(range.code, coevo::cli::kExitRange);
  EXPECT_NE(range.err.find("b must"), std::string::npos);
  EXPECT_EQ(std::count(range.err.begin(), range.err.end(), '\n'), 1);

  EXPECT_EQ(invoke(with({"run", "--b", "x"})).code, coevo::cli::kExitConfig);
  EXPECT_EQ(invoke(with({"run", "--bogus", "1"})).code, coevo::cli::kExitConfig);
  EXPECT_EQ(invoke({"frobnicate"}).code, coevo::cli::kExitConfig);
  EXPECT_EQ(invoke(with({"run", "--out", "/nonexistent/dir/out.csv"})).code, coevo::cli::kExitIo);
  EXPECT_EQ(invoke(with({"run", "--config", "/nonexistent/cfg"})).code, coevo::cli::kExitIo);
  EXPECT_EQ(invoke({"run", "--n", "64", "--steps", "100", "--window", "500"}).code, coevo::cli::kExitRange);
  EXPECT_EQ(invoke(with({"run", "--steps", "5"})).code, coevo::cli::kExitConfig);  // repeated flag
}

TEST(CliConfig, FileAndFlagOverride) {
  const auto path = scratch_dir() / "exp.cfg";
  {
    std::ofstream cfg(path);
    cfg << "# smoke\ntopology=hl\nn=64\nsteps=20\nwindow=5\nb=1.3\nm=0.2\n";
  }
  const auto r = invoke({"run", "--config", path.string(), "--b", "1.8"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto table = parse(r.out);
  EXPECT_EQ(table.meta("topology"), "hl");
  EXPECT_EQ(table.meta("b"), "1.8");
  EXPECT_EQ(table.meta("m"), "0.2");
  EXPECT_EQ(table.rows.size(), 21u);

  {
    std::ofstream cfg(path);
    cfg << "topology=hl\ncolour=blue\n";
  }
  EXPECT_EQ(invoke({"run", "--config", path.string()}).code, coevo::cli::kExitConfig);
}

TEST(CliSweep, TwoAxisGrid) {
  const auto r = invoke({"sweep", "--topology", "sl", "--n", "16", "--steps", "3", "--window", "1", "--replicas",
                         "1", "--sweep", "b:1:2:11", "--sweep", "m:0:1:11"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto table = parse(r.out);
  EXPECT_EQ(table.rows.size(), 121u);
  const auto b = table.column("b");
  const auto m = table.column("m");
  EXPECT_EQ(table.rows[0][b], "1");
  EXPECT_EQ(table.rows[0][m], "0");
  EXPECT_EQ(table.rows[1][m], "0.1");
  EXPECT_EQ(table.rows[11][b], "1.1");
  EXPECT_EQ(table.rows[120][b], "2");
  EXPECT_EQ(table.rows[120][m], "1");
}

TEST(CliSweep, GammaScanAndDeterminism) {
  const std::vector<std::string> args{"sweep", "--n", "16", "--steps", "5", "--window", "2", "--replicas", "2",
                                      "--sweep", "gamma:0:1:21"};
  const auto a = invoke(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(parse(a.out).rows.size(), 21u);
  EXPECT_EQ(parse(a.out).meta("replicas"), "2");

  const std::vector<std::string> two{"sweep", "--n", "16", "--steps", "5", "--window", "2", "--sweep", "b:1:2:2"};
  EXPECT_EQ(invoke(two).out, invoke(two).out);
}

TEST(CliSweep, AxisLimits) {
  EXPECT_EQ(invoke({"sweep", "--n", "16", "--steps", "2", "--window", "1", "--sweep", "b:1:2:2", "--sweep",
                    "m:0:1:2", "--sweep", "p:0:1:2"})
                .code,
            coevo::cli::kExitRange);
  EXPECT_EQ(invoke({"sweep", "--n", "16", "--sweep", "b:1:2.5:3"}).code, coevo::cli::kExitRange);
  EXPECT_EQ(invoke({"sweep", "--n", "16", "--sweep", "b:1:2"}).code, coevo::cli::kExitConfig);
  EXPECT_EQ(invoke(with({"run", "--sweep", "b:1:2:2"})).code, coevo::cli::kExitConfig);
}

TEST(CliDist, OneRowPerNode) {
  const auto r = invoke({"dist", "--topology", "sl", "--m", "0", "--steps", "5", "--window", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto table = parse(r.out);
  ASSERT_EQ(table.rows.size(), 2500u);
  EXPECT_EQ(table.header, (std::vector<std::string>{"node_id", "A_initial", "A_final"}));
  double mean = 0.0;
  for (const auto& row : table.rows) mean += std::stod(row[1]);
  EXPECT_NEAR(mean / 2500.0, 2.0, 0.05);
}

TEST(CliDist, FrozenWeightsGiveEqualColumns) {
  const auto r = invoke({"dist", "--topology", "xl", "--n", "100", "--delta", "0", "--steps", "30", "--window", "5"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto table = parse(r.out);
  ASSERT_EQ(table.rows.size(), 100u);
  for (const auto& row : table.rows) ASSERT_EQ(row[1], row[2]);
}

TEST(CliGraph, EdgeListAscending) {
  const auto r = invoke({"graph", "--topology", "ws", "--n", "50", "--ws-k", "4", "--seed", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream in(r.out);
  std::pair<int, int> prev{-1, -1};
  int lines = 0;
  for (int i, j; in >> i >> j; ++lines) {
    ASSERT_LT(i, j);
    ASSERT_LT(prev, std::make_pair(i, j));
    prev = {i, j};
  }
  EXPECT_EQ(lines, 100);
}

TEST(CliHelp, ExitsZero) {
  const auto r = invoke({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("sweep"), std::string::npos);
}
