#include <gtest/gtest.h>

#include <sys/wait.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "../tools/cli.hpp"
#include "dqmax/io/benchmark_suite.hpp"
#include "dqmax/io/dimacs.hpp"
#include "dqmax/io/result_document.hpp"
#include "dqmax/projected_counter.hpp"
#include "support.hpp"

using namespace dqmax;
using dqmax::testing::data_path;

namespace {

struct CliRun {
  int status;
  std::string out, err;
};

CliRun cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int status = run_cli(args, out, err);
  return {status, out.str(), err.str()};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("dqmax_cli_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    const auto path = (dir_ / name).string();
    std::ofstream(path) << text;
    return path;
  }

  std::filesystem::path dir_;
};

}  // namespace

TEST_F(Cli, SolveJsonThenCheck) {
  for (const char* method : {"global", "incremental", "auto"}) {
    const CliRun solved = cli({"solve", data_path("ex2.dqm"), "--method", method, "--json"});
    ASSERT_EQ(solved.status, 0) << solved.err;
    const auto doc = parse_result(solved.out);
    EXPECT_EQ(*doc.solution.achieved_count, 3);
    const CliRun checked = cli({"check", data_path("ex2.dqm"), write("r.json", solved.out)});
    EXPECT_EQ(checked.status, 0) << checked.err;
    EXPECT_EQ(checked.out, "ok: count 3 of 4 verified\n");
  }
}

TEST_F(Cli, CheckRejectsTamperedResults) {
  const CliRun solved = cli({"solve", data_path("ex1.dqm"), "--json"});
  ASSERT_EQ(solved.status, 0);
  auto j = nlohmann::json::parse(solved.out);
  j["count"] = 4;
  const CliRun checked = cli({"check", data_path("ex1.dqm"), write("bad.json", j.dump())});
  EXPECT_EQ(checked.status, 1);
  EXPECT_NE(checked.err.find("mismatch"), std::string::npos);

  // x1 may read only z1 and z2 (variables 4 and 5).
  j = nlohmann::json::parse(solved.out);
  j["functions"]["1"] = {{"support", {2}}, {"minterms", {{2}}}};
  EXPECT_EQ(cli({"check", data_path("ex1.dqm"), write("dep.json", j.dump())}).status, 1);

  EXPECT_EQ(cli({"check", data_path("ex1.dqm"), write("junk.json", "{")}).status, 2);
}

TEST_F(Cli, TextOutput) {
  const CliRun r = cli({"solve", data_path("ex10.dqm"), "--method", "global"});
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, "count 3 of 4 (method global)\nvar 1 over {4}: 4\n");
}

TEST_F(Cli, UsageAndInputErrorsExitTwo) {
  EXPECT_EQ(cli({}).status, 2);
  EXPECT_EQ(cli({"frobnicate"}).status, 2);
  EXPECT_EQ(cli({"solve"}).status, 2);
  EXPECT_EQ(cli({"solve", data_path("ex1.dqm"), "--method", "magic"}).status, 2);
  EXPECT_EQ(cli({"solve", data_path("ex1.dqm"), "--json", "--text"}).status, 2);
  EXPECT_EQ(cli({"solve", (dir_ / "missing.dqm").string()}).status, 2);
  EXPECT_EQ(cli({"solve", write("bad.dqm", "p dqmscnf 2 1\n1 3 0\n")}).status, 2);
  const CliRun op = cli({"solve-program", write("bad.bv", "width 2\nrandom y\ninput x\nwin x * y == 1\n")});
  EXPECT_EQ(op.status, 2);
  EXPECT_NE(op.err.find("line 4"), std::string::npos) << op.err;
  EXPECT_EQ(cli({"--help"}).status, 0);
}

TEST_F(Cli, CountLeavesMaximizingVariablesFree) {
  const Problem p = dqmax::testing::load("ex2.dqm");
  const CliRun r = cli({"count", data_path("ex2.dqm")});
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, std::to_string(dqmax::testing::naive_count(p.cnf, p.count_vars)) + "\n");
}

TEST_F(Cli, TraceWritesOneJsonLinePerIteration) {
  const CliRun r = cli({"solve", data_path("ex2.dqm"), "--method", "incremental", "--trace"});
  ASSERT_EQ(r.status, 0);
  std::istringstream lines(r.err);
  std::string line;
  int n = 0;
  while (std::getline(lines, line)) {
    const auto j = nlohmann::json::parse(line);
    ++n;
    EXPECT_EQ(j["iteration"], n);
  }
  EXPECT_EQ(n, 3);
}

TEST_F(Cli, SolveProgram) {
  const std::string emitted = (dir_ / "ex6.dqm").string();
  const CliRun text = cli({"solve-program", data_path("ex6.bv"), "--emit-instance", emitted});
  ASSERT_EQ(text.status, 0) << text.err;
  EXPECT_NE(text.out.find("count 6 of 8"), std::string::npos);
  EXPECT_NE(text.out.find("x1 = 1 0 0\nx2 = y1 1 0\nx3 = y1 y2 1\n"), std::string::npos);

  const CliRun json = cli({"solve-program", data_path("ex6.bv"), "--json"});
  ASSERT_EQ(json.status, 0);
  const auto doc = parse_result(json.out);
  ASSERT_EQ(doc.lifted.size(), 3u);
  EXPECT_EQ(doc.bit_lifted.size(), 9u);
  // The emitted instance is the one the result was computed for.
  EXPECT_EQ(cli({"check", emitted, write("r.json", json.out)}).status, 0);
}

TEST_F(Cli, Bench) {
  const CliRun r = cli({"bench", "--show-lifted"});
  ASSERT_EQ(r.status, 0) << r.err;
  for (const char* row : {"ex1 ", "ex2 ", "ex10 ", "ex4 (3 bits)", "ex4 (4 bits)", "ex6 (3 bits)",
                          "guessbits (3 bits)", "capacity (3 bits)", "26/64", "100/256", "6/8", "x3 = y1 y2 1"})
    EXPECT_NE(r.out.find(row), std::string::npos) << row;
  EXPECT_EQ(cli({"bench", "--suite", "other"}).status, 2);
}

TEST_F(Cli, RandomIsDeterministicAndParses) {
  const CliRun a = cli({"random", "--seed", "9", "--vars", "6"});
  const CliRun b = cli({"random", "--seed", "9", "--vars", "6"});
  ASSERT_EQ(a.status, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out, cli({"random", "--seed", "10", "--vars", "6"}).out);
  const Problem p = parse_instance(a.out);
  EXPECT_LE(p.cnf.num_vars(), 6u);
  EXPECT_EQ(cli({"solve", write("r.dqm", a.out)}).status, 0);
}

TEST(BenchSuite, EmbeddedTextsMatchDataFiles) {
  const auto suite = default_suite();
  ASSERT_EQ(suite.size(), 8u);
  for (const auto& b : suite) EXPECT_EQ(b.text, dqmax::testing::read_data(b.file)) << b.file;
}

TEST_F(Cli, BinaryExitCodes) {
  auto status_of = [&](const std::string& args) {
    const std::string cmd = std::string(DQMAX_BINARY) + " " + args + " > " + (dir_ / "out").string() + " 2>&1";
    const int raw = std::system(cmd.c_str());
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  };
  EXPECT_EQ(status_of("solve " + data_path("ex1.dqm")), 0);
  EXPECT_EQ(status_of("solve"), 2);
  EXPECT_EQ(status_of("solve " + (dir_ / "none.dqm").string()), 2);
}
