/* Copyright 2026 The Pathobench Authors.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "pathobench/bench/report.h"
#include "pathobench/core/formats.h"

namespace pathobench {
namespace {

namespace fs = std::filesystem;

struct Result {
  int exit_code = -1;
  std::string output;
};

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::path(::testing::TempDir()) /
           ("cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  Result Run(const std::string& args) {
    const std::string log = (dir_ / "cli.log").string();
    const std::string cmd = std::string(PATHOBENCH_CLI) + " " + args + " > " + log + " 2>&1";
    const int status = std::system(cmd.c_str());
    Result r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.output = ReadFile(log);
    return r;
  }

  std::string Path(const std::string& name) const { return (dir_ / name).string(); }

  // A small corpus plus its benchmark under `out`.
  void BuildToyBench(const std::string& out, const std::string& extra = "") {
    ASSERT_EQ(Run("toy-corpus --pairs 12 --out " + Path("corpus")).exit_code, 0);
    const Result r = Run("build-bench --corpus " + Path("corpus/corpus.jsonl") + " --out " +
                         Path(out) + " " + extra);
    ASSERT_EQ(r.exit_code, 0) << r.output;
  }

  fs::path dir_;
};

TEST_F(CliTest, HelpListsSubcommands) {
  const Result r = Run("--help");
  EXPECT_EQ(r.exit_code, 0);
  for (const char* cmd : {"segment", "build-bench", "forge-text", "forge-images", "mine-hard",
                          "refine-pos", "train-toy", "evaluate", "zero-shot", "report"}) {
    EXPECT_NE(r.output.find(cmd), std::string::npos) << cmd;
  }
}

TEST_F(CliTest, BuildBenchIsReproducible) {
  BuildToyBench("a");
  ASSERT_EQ(Run("build-bench --corpus " + Path("corpus/corpus.jsonl") + " --out " + Path("b") +
                " --jobs 3")
                .exit_code,
            0);
  const std::string a = ReadFile(Path("a/benchmark.jsonl"));
  EXPECT_FALSE(a.empty());
  EXPECT_EQ(a, ReadFile(Path("b/benchmark.jsonl")));
  EXPECT_EQ(ParseBenchmark(a).size(), 12u * 9u);
}

TEST_F(CliTest, RunManifest) {
  BuildToyBench("a");
  const auto run = nlohmann::json::parse(ReadFile(Path("a/run.json")));
  for (const char* key : {"command", "argv", "seed", "oracle", "config", "inputs", "outputs",
                          "git_hash", "transcript_digest"}) {
    EXPECT_TRUE(run.contains(key)) << key;
  }
  EXPECT_EQ(run["command"], "build-bench");
  EXPECT_EQ(run["oracle"], "toy");
}

TEST_F(CliTest, MissingLexiconNamesThePath) {
  ASSERT_EQ(Run("toy-corpus --pairs 2 --out " + Path("corpus")).exit_code, 0);
  const Result r = Run("segment --corpus " + Path("corpus/corpus.jsonl") + " --lexicon " +
                       Path("nope.tsv") + " --out " + Path("seg"));
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_NE(r.output.find(Path("nope.tsv")), std::string::npos) << r.output;
}

TEST_F(CliTest, UnreachableOracleExitsTwo) {
  ASSERT_EQ(Run("toy-corpus --pairs 2 --out " + Path("corpus")).exit_code, 0);
  const Result r = Run("build-bench --oracle http://127.0.0.1:9 --corpus " +
                       Path("corpus/corpus.jsonl") + " --out " + Path("x"));
  EXPECT_EQ(r.exit_code, 2) << r.output;
  EXPECT_NE(r.output.find("OracleUnavailable"), std::string::npos) << r.output;
}

TEST_F(CliTest, StdioOracleMatchesInProcess) {
  BuildToyBench("toy");
  BuildToyBench("stdio", std::string("--oracle 'stdio:") + TOY_ORACLE_SERVER +
                             " --stdio --toy-terms --attribute-lexicon " + PATHOBENCH_DATA_DIR +
                             "/attribute_lexicon.tsv'");
  EXPECT_EQ(ReadFile(Path("toy/benchmark.jsonl")), ReadFile(Path("stdio/benchmark.jsonl")));
}

TEST_F(CliTest, EvaluateAndReport) {
  BuildToyBench("a");
  const std::string bench = Path("a/benchmark.jsonl");
  ASSERT_EQ(Run("evaluate --bench " + bench + " --scorer perfect --image-root " + Path("corpus") +
                " --out " + Path("perfect"))
                .exit_code,
            0);
  const auto grid = bench::ParseGridCsv(ReadFile(Path("perfect/grid.csv")));
  for (double a : grid.Accuracies()) EXPECT_EQ(a, 1.0);

  const Result r = Run("report --grid " + Path("perfect/grid.json") +
                       " --format csv,json,radar_svg --out " + Path("rep"));
  ASSERT_EQ(r.exit_code, 0) << r.output;
  EXPECT_EQ(bench::ParseGridCsv(ReadFile(Path("rep/report.csv"))), grid);
  EXPECT_NE(ReadFile(Path("rep/report.svg")).find("<svg"), std::string::npos);
}

TEST_F(CliTest, ReportFromHandEnteredRow) {
  const Result r = Run(
      "report --accuracies 0.7072,0.6643,0.5851,0.6431,0.6129,0.5237,0.4915,0.5220,0.4655,"
      "0.3831,0.3026,0.3409 --format csv --out " + Path("rep"));
  ASSERT_EQ(r.exit_code, 0) << r.output;
  std::istringstream in(ReadFile(Path("rep/report.csv")));
  std::string header, row;
  std::getline(in, header);
  std::getline(in, row);
  EXPECT_EQ(row.rfind("0.7072,0.6643,0.5851", 0), 0u) << row;
}

TEST_F(CliTest, BadAccuracyListIsAnError) {
  EXPECT_EQ(Run("report --accuracies 0.1,0.2 --out " + Path("rep")).exit_code, 1);
}

TEST_F(CliTest, UnknownConfigKeyRejected) {
  std::ofstream(Path("cfg.toml")) << "[miner]\nlamda = 2\n";
  const Result r = Run("--config " + Path("cfg.toml") + " report --accuracies "
                       "1,1,1,1,1,1,1,1,1,1,1,1 --out " + Path("rep"));
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_NE(r.output.find("lamda"), std::string::npos) << r.output;
}

TEST_F(CliTest, RecordThenReplay) {
  ASSERT_EQ(Run("toy-corpus --pairs 3 --out " + Path("corpus")).exit_code, 0);
  const std::string corpus = Path("corpus/corpus.jsonl");
  ASSERT_EQ(Run("build-bench --corpus " + corpus + " --record " + Path("t.jsonl") + " --out " +
                Path("live"))
                .exit_code,
            0);
  const Result r = Run("build-bench --oracle replay:" + Path("t.jsonl") + " --corpus " + corpus +
                       " --out " + Path("replayed"));
  ASSERT_EQ(r.exit_code, 0) << r.output;
  EXPECT_EQ(ReadFile(Path("live/benchmark.jsonl")), ReadFile(Path("replayed/benchmark.jsonl")));
}

TEST_F(CliTest, TrainToyWritesTrace) {
  const Result r = Run("train-toy --epochs 3 --pairs 80 --out " + Path("train"));
  ASSERT_EQ(r.exit_code, 0) << r.output;
  const std::string trace = ReadFile(Path("train/trace.csv"));
  EXPECT_EQ(trace.rfind("epoch,loss,retrieval_acc\n", 0), 0u);
  EXPECT_TRUE(fs::exists(Path("train/params.bin")));
}

}  // namespace
}  // namespace pathobench
