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

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include "orsearch/orsearch.hpp"

namespace orsearch {
namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::vector<std::string> lines(const std::string& s) {
  auto out = split(s, '\n');
  if (!out.empty() && out.back().empty()) out.pop_back();
  return out;
}

const std::vector<Fixture>& fixtures() {
  static const std::vector<Fixture> f = synthetic_fixtures(12, 3);
  return f;
}

TEST(Fixtures, PlantedPathSolvesToReference) {
  for (const auto& fx : fixtures()) {
    const auto& c = fx.problem.correct_fragments;
    const auto got = path_objective({c.at(Layer::kSP), c.at(Layer::kV), c.at(Layer::kOC)});
    ASSERT_TRUE(got) << fx.name;
    EXPECT_NEAR(*got, fx.reference_objective, 1e-9) << fx.name;
    for (Layer l : {Layer::kSP, Layer::kV, Layer::kOC}) {
      const auto& decoys = fx.problem.decoy_fragments.at(l);
      EXPECT_GE(decoys.size(), 2u) << fx.name << " " << layer_name(l);
      for (const auto& d : decoys) EXPECT_NE(d, c.at(l));
      EXPECT_EQ(std::set<std::string>(decoys.begin(), decoys.end()).size(), decoys.size());
    }
  }
}

TEST(Fixtures, NamesAndDeterminism) {
  EXPECT_EQ(fixtures().front().name, "synthetic-0001");
  const auto again = synthetic_fixtures(3, 3);
  for (std::size_t i = 0; i < again.size(); ++i) {
    EXPECT_EQ(again[i].model, fixtures()[i].model);
    EXPECT_EQ(again[i].problem.decoy_fragments, fixtures()[i].problem.decoy_fragments);
  }
}

TEST(Fixtures, LoadDirectory) {
  const auto loaded = load_fixtures(ORSEARCH_SAMPLES_DIR "/fixtures", 0);
  std::vector<std::string> names;
  for (const auto& f : loaded) names.push_back(f.name);
  EXPECT_EQ(names, (std::vector<std::string>{"diet", "knapsack", "planning",
                                             "production", "transport"}));
  EXPECT_EQ(loaded[3].reference_objective, 20.0);
  const auto empty = std::filesystem::temp_directory_path() / "orsearch_empty_fixtures";
  std::filesystem::create_directories(empty);
  try {
    load_fixtures(empty, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kEmptyFixtureSet);
  }
  EXPECT_THROW(load_fixtures(empty / "missing", 0), Error);
  StructuredModel infeasible = parse_model_file(ORSEARCH_SAMPLES_DIR "/infeasible.json");
  EXPECT_THROW(make_fixture("bad", infeasible, 0), Error);
}

TEST(Bench, EmptyAndInvalidInputs) {
  BenchOptions o;
  try {
    run_bench({}, o);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kEmptyFixtureSet);
  }
  o.replicas = 0;
  EXPECT_THROW(run_bench(fixtures(), o), Error);
}

TEST(Bench, StepsColumn) {
  BenchOptions o;
  const auto report = run_bench(fixtures(), o);
  std::vector<double> steps;
  for (const auto& row : report.rows) steps.push_back(row.mean_steps);
  EXPECT_EQ(steps, (std::vector<double>{9, 9, 9, 15, 21, 15, 21, 39}));
}

TEST(Bench, NoiselessRates) {
  BenchOptions o;
  o.replicas = 3;
  o.algorithms = default_bench_algorithms();
  o.algorithms[1].epsilon = 0.0;
  SearchConfig direct;
  direct.algorithm = Algorithm::kDirect;
  o.algorithms.push_back(direct);
  const auto report = run_bench(fixtures(), o);
  for (std::size_t i = 0; i + 1 < report.rows.size(); ++i) {
    EXPECT_EQ(report.rows[i].correct_rate, 1.0) << algorithm_label(report.rows[i].config);
  }
  EXPECT_LT(report.rows.back().correct_rate, 1.0);
  EXPECT_EQ(report.rows.back().mean_steps, 1.0);
}

TEST(Bench, CsvSchema) {
  BenchOptions o;
  o.replicas = 2;
  const auto report = run_bench(fixtures(), o);
  const auto rows = lines(bench_csv(report));
  ASSERT_EQ(rows.size(), 9u);
  EXPECT_EQ(rows[0], "algorithm,k,epsilon,threshold,branching,trials,correct,"
                     "correct_rate,mean_steps");
  EXPECT_EQ(rows[1], "greedy,,,,3,24,24,1.000000,9.000000");
  EXPECT_EQ(split(rows[2], ',')[2], "0.100000");
  EXPECT_EQ(split(rows[3], ',')[3], "0.050000");
  EXPECT_EQ(split(rows[7], ',')[0], "bpp");
  EXPECT_EQ(split(rows[7], ',')[1], "3");
  for (const auto& r : rows) EXPECT_EQ(split(r, ',').size(), 9u) << r;

  const auto trials = lines(trials_csv(report));
  ASSERT_EQ(trials.size(), 1u + 12 * 2 * 8);
  EXPECT_EQ(trials[0], "fixture,replica,algorithm,k,epsilon,threshold,branching,"
                       "seed,steps,correct,objective");
  for (std::size_t i = 1; i < trials.size(); ++i) {
    EXPECT_EQ(split(trials[i], ',').size(), 11u) << trials[i];
  }
}

TEST(Bench, RatesRecomputeFromTrials) {
  BenchOptions o;
  o.replicas = 2;
  o.seed = 8;
  o.noise.logit_stddev = 3;
  o.noise.judge_stddev = 1;
  const auto report = run_bench(fixtures(), o);
  const auto trials = lines(trials_csv(report));
  const auto rows = lines(bench_csv(report));
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto cols = split(rows[r], ',');
    std::size_t n = 0, ok = 0;
    double steps = 0;
    for (std::size_t t = 1; t < trials.size(); ++t) {
      const auto tc = split(trials[t], ',');
      if (tc[2] != cols[0] || tc[3] != cols[1]) continue;
      ++n;
      ok += tc[9] == "1";
      steps += std::stod(tc[8]);
    }
    EXPECT_EQ(std::to_string(n), cols[5]);
    EXPECT_EQ(std::to_string(ok), cols[6]);
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", static_cast<double>(ok) / n);
    EXPECT_EQ(buf, cols[7]);
    std::snprintf(buf, sizeof buf, "%.6f", steps / n);
    EXPECT_EQ(buf, cols[8]);
  }
}

TEST(Bench, TrialsShareSeedsAcrossAlgorithms) {
  BenchOptions o;
  o.seed = 4;
  const auto report = run_bench(fixtures(), o);
  for (const auto& t : report.trials) {
    EXPECT_EQ(t.seed, trial_seed(4, t.fixture, t.replica));
  }
}

TEST(Bench, ParallelWorkersGiveIdenticalOutput) {
  BenchOptions o;
  o.replicas = 2;
  o.seed = 11;
  o.noise.logit_stddev = 3;
  o.noise.judge_stddev = 1;
  const auto serial = run_bench(fixtures(), o);
  o.jobs = 3;
  const auto parallel = run_bench(fixtures(), o);
  EXPECT_EQ(bench_csv(parallel), bench_csv(serial));
  EXPECT_EQ(trials_csv(parallel), trials_csv(serial));
}

TEST(Bench, NoiseLowersRates) {
  BenchOptions o;
  o.replicas = 3;
  o.seed = 2;
  o.noise.logit_stddev = 3;
  o.noise.judge_stddev = 1;
  const auto report = run_bench(fixtures(), o);
  double total = 0;
  for (const auto& row : report.rows) total += row.correct_rate;
  EXPECT_LT(total / report.rows.size(), 0.95);
  EXPECT_GT(total / report.rows.size(), 0.05);
}

TEST(Bench, TableListsEveryRow) {
  BenchOptions o;
  const auto text = bench_table(run_bench(fixtures(), o));
  EXPECT_EQ(lines(text).size(), 9u);
  EXPECT_NE(text.find("bpp(k=3)"), std::string::npos);
}

}  // namespace
}  // namespace orsearch
