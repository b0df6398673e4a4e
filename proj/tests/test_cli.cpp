#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "annealsim/cli.hpp"

namespace fs = std::filesystem;
using annealsim::cli::RunConfig;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  args.insert(args.begin(), "annealsim");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = annealsim::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("annealsim_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  std::string instance(unsigned n = 12, unsigned f = 20) {
    const auto file = path("inst.txt");
    EXPECT_EQ(run({"gen", "--n", std::to_string(n), "--f", std::to_string(f), "--seed", "7", "-o", file, "--out",
                   dir_.string()})
                  .code,
              0);
    return file;
  }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, GenThenSolve) {
  const auto file = instance();
  const auto r = run({"solve", file, "--out", dir_.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("unique minimizer"), std::string::npos);
  EXPECT_NE(r.out.find("objective = 0"), std::string::npos);
  EXPECT_NE(r.out.find("energy = 0"), std::string::npos);
  EXPECT_TRUE(fs::exists(dir_ / "solve.config.json"));
}

TEST_F(Cli, ScanShape) {
  const auto file = instance(8, 12);
  const auto r = run({"qaoa-scan", file, "--grid", "8x8", "-o", path("scan.csv"), "--out", dir_.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto csv = slurp(dir_ / "scan.csv");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 65);
}

TEST_F(Cli, AqaReportsAnnealTime) {
  const auto file = instance(8, 12);
  const auto r = run({"aqa", file, "--n", "50", "--tau", "0.4", "--units", "ghz", "--out", dir_.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("t_anneal = 20.4 ns\n"), std::string::npos) << r.out;
  const auto traj = slurp(dir_ / "trajectory.csv");
  EXPECT_EQ(std::count(traj.begin(), traj.end(), '\n'), 52);
}

TEST_F(Cli, ConfigEchoRoundTrips) {
  const auto file = instance(6, 9);
  ASSERT_EQ(run({"qaoa-opt", file, "--p", "2", "--max-calls", "20", "--seed", "3", "--no-two-pi", "--out",
                 dir_.string()})
                .code,
            0);
  const auto echo = slurp(dir_ / "qaoa-opt.config.json");
  const auto cfg = RunConfig::from_json(echo);
  EXPECT_EQ(cfg.subcommand, "qaoa-opt");
  EXPECT_EQ(cfg.p, 2U);
  EXPECT_EQ(cfg.max_calls, 20U);
  EXPECT_EQ(cfg.seed, 3U);
  EXPECT_FALSE(cfg.two_pi);
  EXPECT_EQ(cfg.to_json(), echo);
  EXPECT_EQ(RunConfig::from_json(cfg.to_json()), cfg);
}

TEST_F(Cli, DeterministicOutputs) {
  const auto file = instance(6, 9);
  const std::vector<std::string> base = {"qaoa-opt", file, "--p", "3", "--max-calls", "40", "--units", "dimensionless"};
  auto first = base, second = base;
  first.insert(first.end(), {"--out", path("a")});
  second.insert(second.end(), {"--out", path("b")});
  ASSERT_EQ(run(first).code, 0);
  ASSERT_EQ(run(second).code, 0);
  EXPECT_EQ(slurp(dir_ / "a" / "trace.jsonl"), slurp(dir_ / "b" / "trace.jsonl"));
  EXPECT_FALSE(slurp(dir_ / "a" / "trace.jsonl").empty());
}

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  const auto bad_flag = run({"solve", "x.txt", "--bogus"});
  EXPECT_EQ(bad_flag.code, 2);
  EXPECT_NE(bad_flag.err.find("Usage"), std::string::npos);
  EXPECT_EQ(run({"aqa", "x.txt", "--tau", "-1"}).code, 2);
  EXPECT_EQ(run({"aqa", "x.txt", "--form", "diagonal"}).code, 2);
  EXPECT_EQ(run({"qaoa-scan", "x.txt", "--grid", "8by8"}).code, 2);
  EXPECT_EQ(run({"scaling", "--sizes", "10,12"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST_F(Cli, RuntimeErrors) {
  const auto r = run({"solve", path("missing.txt"), "--out", dir_.string()});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("missing.txt"), std::string::npos);
}

TEST_F(Cli, PlotsFromResults) {
  const auto file = instance(6, 9);
  ASSERT_EQ(run({"qaoa-scan", file, "--grid", "8x8", "--out", dir_.string()}).code, 0);
  ASSERT_EQ(run({"aqa", file, "--n", "9", "--tau", "0.3", "--units", "dimensionless", "--out", dir_.string()}).code, 0);
  const auto r = run({"plot", dir_.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto heat = slurp(dir_ / "landscape_energy.svg");
  EXPECT_NE(heat.find("extent x=[0,6.283185307179586) y=[0,3.141592653589793)"), std::string::npos);
  const auto traj = slurp(dir_ / "trajectory.svg");
  EXPECT_EQ(std::count(traj.begin(), traj.end(), '\n') > 0, true);
  // n + 1 = 10 points per qubit polyline
  const auto first = traj.find("points=\"");
  const auto end = traj.find('"', first + 8);
  const auto pts = traj.substr(first + 8, end - first - 8);
  EXPECT_EQ(std::count(pts.begin(), pts.end(), ','), 10);
  EXPECT_EQ(std::count(traj.begin(), traj.end(), '\n') - std::count(heat.begin(), heat.end(), '\n') != 0, true);

  // Re-running reproduces identical files.
  ASSERT_EQ(run({"plot", dir_.string()}).code, 0);
  EXPECT_EQ(slurp(dir_ / "landscape_energy.svg"), heat);
}

TEST_F(Cli, PlotOnEmptyDirectoryFails) {
  const auto empty = dir_ / "empty";
  fs::create_directories(empty);
  const auto r = run({"plot", empty.string()});
  EXPECT_EQ(r.code, 1);
  EXPECT_TRUE(fs::is_empty(empty));
}

TEST_F(Cli, TdseAndScalingAndBench) {
  ASSERT_EQ(run({"gen", "--n", "5", "--f", "8", "--seed", "1", "-o", path("i5.txt"), "--out", dir_.string()}).code, 0);
  const auto t = run({"tdse-check", path("i5.txt"), "--units", "dimensionless", "--t-anneal", "2", "--taus", "0.2,0.1",
                      "--out", dir_.string()});
  ASSERT_EQ(t.code, 0) << t.err;
  EXPECT_EQ(RunConfig::from_json(slurp(dir_ / "tdse-check.config.json")).sampling, "midpoint");
  const auto trotter = slurp(dir_ / "trotter.csv");
  EXPECT_EQ(std::count(trotter.begin(), trotter.end(), '\n'), 3);

  const auto s = run({"scaling", "--sizes", "4,5,6", "--per-size", "1", "--n", "10", "--tau", "0.3", "--units",
                      "dimensionless", "--out", dir_.string()});
  ASSERT_EQ(s.code, 0) << s.err;
  EXPECT_NE(s.out.find("alpha = "), std::string::npos);
  EXPECT_TRUE(fs::exists(dir_ / "fit.json"));

  const auto b = run({"bench", "--qubits", "8", "--local", "6", "--threads", "1", "--out", dir_.string()});
  ASSERT_EQ(b.code, 0) << b.err;
  EXPECT_NE(b.out.find("N,M,reps,threads,elapsed_total"), std::string::npos);
  EXPECT_EQ(run({"bench", "--qubits", "8", "--local", "9"}).code, 2);
}

TEST_F(Cli, ExecutableExitCodes) {
  EXPECT_EQ(WEXITSTATUS(std::system((std::string(ANNEALSIM_CLI_PATH) + " > /dev/null 2>&1").c_str())), 2);
  EXPECT_EQ(WEXITSTATUS(std::system((std::string(ANNEALSIM_CLI_PATH) + " --help > /dev/null").c_str())), 0);
}
