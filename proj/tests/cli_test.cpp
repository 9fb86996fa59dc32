// Copyright 2026 The orsearch Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"
#include "orsearch/orsearch.hpp"

namespace orsearch {
namespace {

namespace fs = std::filesystem;

struct Run {
  int status = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(ORSEARCH_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::string sample(const std::string& name) {
  return std::string(ORSEARCH_SAMPLES_DIR) + "/" + name;
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "orsearch_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

TEST(Cli, Validate) {
  auto r = run("validate " + sample("production.json"));
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, "valid\n");
  r = run("validate " + sample("bad_set.json"));
  EXPECT_EQ(r.status, 1);
  EXPECT_NE(r.out.find("SetNotContiguous"), std::string::npos) << r.out;
  EXPECT_EQ(run("validate " + sample("missing.json")).status, 2);
}

TEST(Cli, MalformedDocumentIsAUsageError) {
  const fs::path bad = scratch("broken.json");
  std::ofstream(bad) << "{\"variable\": [}";
  EXPECT_EQ(run("validate " + bad.string()).status, 2);
}

TEST(Cli, Solve) {
  auto r = run("solve " + sample("production.json"));
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, "Optimal 20.000000\n");
  r = run("solve " + sample("production.json") + " --show-solution");
  EXPECT_EQ(r.out, "Optimal 20.000000\nx_1 0.000000\nx_2 4.000000\n");
  r = run("solve " + sample("infeasible.json"));
  EXPECT_EQ(r.status, 1);
  EXPECT_EQ(r.out, "Infeasible\n");
  r = run("solve " + sample("fixtures/diet.json") + " --relaxation");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out.rfind("Optimal ", 0), 0u);
}

TEST(Cli, EmittedLpMatchesInstantiate) {
  const fs::path lp = scratch("production.lp");
  EXPECT_EQ(run("solve " + sample("production.json") + " --emit-lp " + lp.string()).status, 0);
  std::stringstream text;
  text << std::ifstream(lp).rdbuf();
  const auto inst = run("instantiate " + sample("production.json"));
  EXPECT_EQ(inst.status, 0);
  EXPECT_EQ(text.str(), inst.out);
  EXPECT_NE(inst.out.find(" obj: 3 x_1 + 5 x_2\n"), std::string::npos);
}

TEST(Cli, SearchReport) {
  const auto r = run("search " + sample("fixtures/transport.json") +
                     " --algorithm bpp -k 3 --seed 5");
  EXPECT_EQ(r.status, 0) << r.out;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["algorithm"], "bpp");
  EXPECT_EQ(j["steps"], 21);
  EXPECT_EQ(j["seed"], 5);
  EXPECT_EQ(j["correct"], true);
  EXPECT_EQ(j["reference_objective"], 127.0);
  EXPECT_EQ(run("search " + sample("fixtures/transport.json") +
                " --algorithm bpp -k 3 --seed 5").out,
            r.out);
}

TEST(Cli, SearchNeedsExactlyOneSource) {
  EXPECT_EQ(run("search").status, 2);
  EXPECT_EQ(run("search " + sample("production.json") + " --endpoint http://127.0.0.1:1")
                .status,
            2);
  EXPECT_EQ(run("search " + sample("production.json") + " --algorithm mcts").status, 2);
}

TEST(Cli, BenchIsDeterministic) {
  const std::string args = "bench --synthetic 4 --replicas 2 --noise 3 --seed 9 --print-csv";
  const auto a = run(args);
  EXPECT_EQ(a.status, 0);
  EXPECT_EQ(a.out.rfind("algorithm,k,epsilon,threshold,branching,trials,correct,"
                        "correct_rate,mean_steps\n", 0),
            0u);
  EXPECT_EQ(run(args).out, a.out);
  EXPECT_EQ(run(args + " --jobs 3").out, a.out);
}

TEST(Cli, BenchOverDirectoryWithAlgorithmList) {
  const fs::path trials = scratch("trials.csv");
  const auto r = run("bench " + sample("fixtures") +
                     " --algorithms greedy,beam:3,full-traverse --print-csv --trials " +
                     trials.string());
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out,
            "algorithm,k,epsilon,threshold,branching,trials,correct,correct_rate,mean_steps\n"
            "greedy,,,,3,5,5,1.000000,9.000000\n"
            "beam,3,,,3,5,5,1.000000,21.000000\n"
            "full-traverse,,,,3,5,5,1.000000,39.000000\n");
  std::ifstream in(trials);
  std::string line;
  int count = 0;
  while (std::getline(in, line)) ++count;
  EXPECT_EQ(count, 16);
}

TEST(Cli, BenchArgumentErrors) {
  EXPECT_EQ(run("bench").status, 2);
  EXPECT_EQ(run("bench --synthetic 2 --algorithms beam:x").status, 2);
  const fs::path empty = scratch("no_fixtures");
  fs::create_directories(empty);
  EXPECT_EQ(run("bench " + empty.string()).status, 1);
}

TEST(Cli, Augment) {
  const fs::path malformed = scratch("malformed.jsonl");
  std::ofstream(malformed) << "{\"question\": \"Q\", \"text\": \"{oops\"}\n";
  const std::string args = "augment " + sample("production.json") + " " +
                           sample("fixtures/diet.json") + " --seed 3 --malformed " +
                           malformed.string();
  const auto a = run(args);
  EXPECT_EQ(a.status, 0);
  EXPECT_EQ(run(args).out, a.out);
  std::stringstream ss(a.out);
  std::string line, last;
  int n = 0;
  while (std::getline(ss, line)) {
    const auto j = nlohmann::json::parse(line);
    EXPECT_TRUE(j.contains("label"));
    last = line;
    ++n;
  }
  EXPECT_GT(n, 14);
  EXPECT_NE(last.find("incorrect-format"), std::string::npos);
  EXPECT_EQ(run("augment " + sample("production.json") + " --plan sum-domain-swap=1").status,
            1);
  EXPECT_EQ(run("augment " + sample("production.json") + " --plan teleport=1").status, 2);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run("").status, 2);
  EXPECT_EQ(run("solve --no-such-flag x").status, 2);
  EXPECT_EQ(run("--help").status, 0);
}

}  // namespace
}  // namespace orsearch
