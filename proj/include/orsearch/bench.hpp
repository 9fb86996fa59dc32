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

// Benchmark harness: synthetic solvable fixture models, planted search
// problems built from them, and the per-algorithm accuracy/steps report.

#ifndef ORSEARCH_BENCH_HPP_
#define ORSEARCH_BENCH_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "orsearch/augment.hpp"
#include "orsearch/error.hpp"
#include "orsearch/instantiate.hpp"
#include "orsearch/markdown.hpp"
#include "orsearch/model.hpp"
#include "orsearch/model_io.hpp"
#include "orsearch/oracle_suite.hpp"
#include "orsearch/rng.hpp"
#include "orsearch/search.hpp"
#include "orsearch/solver.hpp"

namespace orsearch {

struct Fixture {
  std::string name;
  StructuredModel model;
  double reference_objective = 0.0;
  PlantedProblem problem;
};

// Objective of the model assembled from `path`, if it expands and solves to
// optimality.
inline std::optional<double> path_objective(
    const std::vector<std::string>& path, const SolverOptions& options = {}) {
  try {
    const SolveResult r = solve_mip(expand(join_fragments(path)), options);
    if (r.status == SolveStatus::kOptimal) return r.objective_value;
  } catch (const Error&) {
  }
  return std::nullopt;
}

inline std::optional<double> model_objective(const StructuredModel& m,
                                             const SolverOptions& options = {}) {
  try {
    const SolveResult r = solve_mip(expand(m), options);
    if (r.status == SolveStatus::kOptimal) return r.objective_value;
  } catch (const Error&) {
  }
  return std::nullopt;
}

// Joins layer fragments into one compact model document.
inline std::string combine_fragments(const std::vector<std::string>& parts) {
  return serialize_model(join_fragments(parts), -1);
}

namespace bench_detail {

inline std::vector<double> ints(Rng& rng, std::size_t n, long lo, long hi) {
  std::vector<double> v;
  for (std::size_t i = 0; i < n; ++i) {
    v.push_back(static_cast<double>(rng.uniform_int(lo, hi)));
  }
  return v;
}

inline std::vector<long> range(long n) {
  std::vector<long> v;
  for (long i = 1; i <= n; ++i) v.push_back(i);
  return v;
}

inline NumTree matrix(Rng& rng, std::size_t rows, std::size_t cols, long lo,
                      long hi) {
  std::vector<NumTree> items;
  for (std::size_t r = 0; r < rows; ++r) {
    items.push_back(NumTree::vec(ints(rng, cols, lo, hi)));
  }
  return NumTree::list(std::move(items));
}

inline StructuredModel production(Rng& rng) {
  const long np = rng.uniform_int(2, 4), nr = rng.uniform_int(1, 3);
  StructuredModel m;
  m.sets = {{"P", "products", range(np)}, {"R", "resources", range(nr)}};
  m.parameters = {
      {"profit", "unit profit", "{p <in> P}",
       NumTree::vec(ints(rng, np, 2, 12))},
      {"usage", "resource use per unit", "{r <in> R, p <in> P}",
       matrix(rng, nr, np, 1, 6)},
      {"capacity", "resource capacity", "{r <in> R}",
       NumTree::vec(ints(rng, nr, 8, 30))}};
  m.variables = {{"x", "units produced", "{p <in> P}", VarType::kInteger}};
  m.objectives = {{"total_profit", "total profit", Sense::kMax,
                   "<sum>_{p <in> P} profit_{p} x_{p}"}};
  m.constraints = {{"capacity_limit", "resource capacity", "{r <in> R}",
                    "<sum>_{p <in> P} usage_{r,p} x_{p} <= capacity_{r}"}};
  return m;
}

inline StructuredModel transportation(Rng& rng) {
  const long ns = rng.uniform_int(2, 3), nd = rng.uniform_int(2, 3);
  const std::vector<double> supply = ints(rng, ns, 10, 30);
  double total = 0;
  for (double s : supply) total += s;
  const long cap = static_cast<long>(total) / nd;
  StructuredModel m;
  m.sets = {{"S", "sources", range(ns)}, {"D", "destinations", range(nd)}};
  m.parameters = {
      {"supply", "available supply", "{s <in> S}", NumTree::vec(supply)},
      {"demand", "required demand", "{d <in> D}",
       NumTree::vec(ints(rng, nd, 3, std::max(3L, cap)))},
      {"cost", "unit shipping cost", "{s <in> S, d <in> D}",
       matrix(rng, ns, nd, 1, 9)}};
  m.variables = {
      {"y", "units shipped", "{s <in> S, d <in> D}", VarType::kInteger}};
  m.objectives = {{"shipping_cost", "total shipping cost", Sense::kMin,
                   "<sum>_{s <in> S} <sum>_{d <in> D} cost_{s,d} y_{s,d}"}};
  m.constraints = {
      {"supply_limit", "ship no more than supply", "{s <in> S}",
       "<sum>_{d <in> D} y_{s,d} <= supply_{s}"},
      {"demand_met", "meet every demand", "{d <in> D}",
       "<sum>_{s <in> S} y_{s,d} >= demand_{d}"}};
  return m;
}

inline StructuredModel diet(Rng& rng) {
  const long nf = rng.uniform_int(2, 4), nn = rng.uniform_int(2, 3);
  const NumTree content = matrix(rng, nn, nf, 1, 5);
  const std::vector<double> base = ints(rng, nf, 1, 4);
  std::vector<double> lo, hi;
  for (long n = 1; n <= nn; ++n) {
    double level = 0;
    for (long f = 1; f <= nf; ++f) level += content.at({n, f}) * base[f - 1];
    lo.push_back(level - static_cast<double>(rng.uniform_int(0, 2)));
    hi.push_back(level + static_cast<double>(rng.uniform_int(1, 5)));
  }
  StructuredModel m;
  m.sets = {{"F", "foods", range(nf)}, {"N", "nutrients", range(nn)}};
  m.parameters = {
      {"cost", "cost per serving", "{f <in> F}",
       NumTree::vec(ints(rng, nf, 1, 10))},
      {"content", "nutrient per serving", "{n <in> N, f <in> F}", content},
      {"lo", "minimum intake", "{n <in> N}", NumTree::vec(lo)},
      {"hi", "maximum intake", "{n <in> N}", NumTree::vec(hi)}};
  m.variables = {{"z", "servings", "{f <in> F}", VarType::kContinuous}};
  m.objectives = {{"diet_cost", "total cost", Sense::kMin,
                   "<sum>_{f <in> F} cost_{f} * z_{f}"}};
  m.constraints = {
      {"intake", "intake window", "{n <in> N}",
       "lo_{n} <= <sum>_{f <in> F} content_{n,f} z_{f} <= hi_{n}"}};
  return m;
}

inline StructuredModel knapsack(Rng& rng) {
  const long ni = rng.uniform_int(3, 6);
  const std::vector<double> weight = ints(rng, ni, 2, 10);
  double total = 0, heaviest = 0;
  for (double w : weight) {
    total += w;
    heaviest = std::max(heaviest, w);
  }
  StructuredModel m;
  m.sets = {{"I", "items", range(ni)}};
  m.parameters = {
      {"value", "item value", "{i <in> I}", NumTree::vec(ints(rng, ni, 3, 20))},
      {"weight", "item weight", "{i <in> I}", NumTree::vec(weight)},
      {"cap", "knapsack capacity", "",
       NumTree::scalar(std::max(heaviest, std::floor(total / 2)))},
      {"min_items", "minimum number of items", "", NumTree::scalar(1)}};
  m.variables = {{"b", "item taken", "{i <in> I}", VarType::kBinary}};
  m.objectives = {{"packed_value", "value packed", Sense::kMax,
                   "<sum>_{i <in> I} value_{i} b_{i}"}};
  m.constraints = {
      {"weight_limit", "capacity", "",
       "<sum>_{i <in> I} weight_{i} * b_{i} <= cap"},
      {"at_least", "take something", "", "<sum>_{i <in> I} b_{i} >= min_items"}};
  return m;
}

inline void add_unique(std::vector<std::string>& pool, std::string fragment,
                       const std::string& correct) {
  if (fragment == correct) return;
  if (std::find(pool.begin(), pool.end(), fragment) != pool.end()) return;
  pool.push_back(std::move(fragment));
}

}  // namespace bench_detail

// A random solvable model from one of four templates: production planning,
// transportation, diet with intake windows, binary knapsack.
inline StructuredModel random_fixture_model(std::uint64_t seed) {
  for (int attempt = 0;; ++attempt) {
    Rng rng(mix_seed(seed, "fixture#" + std::to_string(attempt)));
    StructuredModel m;
    switch (rng.uniform_index(4)) {
      case 0: m = bench_detail::production(rng); break;
      case 1: m = bench_detail::transportation(rng); break;
      case 2: m = bench_detail::diet(rng); break;
      default: m = bench_detail::knapsack(rng); break;
    }
    if (model_objective(m)) return m;
  }
}

// Planted problem whose correct path is the model's own layer fragments.
// Decoys: corrupted data (SP), changed variable types (V), corrupted
// objective or constraints (OC).
inline PlantedProblem make_planted_problem(const StructuredModel& model,
                                           std::uint64_t seed,
                                           std::size_t decoys_per_layer = 4) {
  using bench_detail::add_unique;
  PlantedProblem p;
  p.question = render_markdown(model);
  const ModelFragments correct = split_fragments(model);
  p.correct_fragments = {{Layer::kSP, correct.sets_and_parameters},
                         {Layer::kV, correct.variables},
                         {Layer::kOC, correct.objective_and_constraints}};

  auto negatives = [&](Layer layer, const std::vector<NegativeKind>& kinds,
                       const std::string& right) {
    std::vector<std::string> pool;
    for (std::size_t a = 0; a < 16 * kinds.size() && pool.size() < decoys_per_layer;
         ++a) {
      Rng rng(mix_seed(seed, std::string(layer_name(layer)) + "#" +
                                 std::to_string(a)));
      try {
        const StructuredModel bad =
            perturb_negative(model, kinds[a % kinds.size()], rng);
        const ModelFragments f = split_fragments(bad);
        add_unique(pool,
                   layer == Layer::kSP ? f.sets_and_parameters
                                       : f.objective_and_constraints,
                   right);
      } catch (const Error& e) {
        if (e.code() != Errc::kNoApplicableSite) throw;
      }
    }
    return pool;
  };

  p.decoy_fragments[Layer::kSP] =
      negatives(Layer::kSP,
                {NegativeKind::kSetDataTamper, NegativeKind::kParamColumnDrop,
                 NegativeKind::kParamReshuffle},
                correct.sets_and_parameters);
  p.decoy_fragments[Layer::kOC] = negatives(
      Layer::kOC,
      {NegativeKind::kRelationFlipInPlace, NegativeKind::kSubscriptSwap,
       NegativeKind::kSumDomainSwap, NegativeKind::kConstraintDelete,
       NegativeKind::kFunctionEdit, NegativeKind::kObjectiveReverse},
      correct.objective_and_constraints);

  std::vector<std::string> vpool;
  for (std::size_t v = 0; v < model.variables.size(); ++v) {
    for (VarType t :
         {VarType::kContinuous, VarType::kInteger, VarType::kBinary}) {
      if (t == model.variables[v].type) continue;
      StructuredModel bad = model;
      bad.variables[v].type = t;
      add_unique(vpool, split_fragments(bad).variables, correct.variables);
    }
  }
  Rng rng(mix_seed(seed, "V"));
  rng.shuffle(vpool);
  if (vpool.size() > decoys_per_layer) vpool.resize(decoys_per_layer);
  p.decoy_fragments[Layer::kV] = std::move(vpool);
  return p;
}

inline Fixture make_fixture(std::string name, const StructuredModel& model,
                            std::uint64_t seed) {
  const auto objective = model_objective(model);
  if (!objective) {
    throw Error(Errc::kInvalidModel,
                "fixture '" + name + "' does not solve to optimality");
  }
  Fixture f{std::move(name), model, *objective, {}};
  f.problem = make_planted_problem(model, mix_seed(seed, f.name));
  return f;
}

inline std::vector<Fixture> synthetic_fixtures(std::size_t count,
                                               std::uint64_t seed) {
  std::vector<Fixture> out;
  for (std::size_t i = 0; i < count; ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "synthetic-%04zu", i + 1);
    out.push_back(
        make_fixture(name, random_fixture_model(mix_seed(seed, name)), seed));
  }
  return out;
}

// Every *.json model in `dir`, ordered by file name.
inline std::vector<Fixture> load_fixtures(const std::filesystem::path& dir,
                                          std::uint64_t seed) {
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec)) {
    throw Error(Errc::kIo, "not a directory: " + dir.string());
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  std::vector<Fixture> out;
  for (const auto& file : files) {
    out.push_back(make_fixture(file.stem().string(),
                               parse_model_file(file.string()), seed));
  }
  if (out.empty()) {
    throw Error(Errc::kEmptyFixtureSet, "no fixtures in " + dir.string());
  }
  return out;
}

inline std::vector<SearchConfig> default_bench_algorithms() {
  std::vector<SearchConfig> out;
  auto add = [&](Algorithm a, int k = 2) {
    SearchConfig c;
    c.algorithm = a;
    c.beam_width = k;
    out.push_back(c);
  };
  add(Algorithm::kGreedy);
  add(Algorithm::kEpsilonGreedy);
  add(Algorithm::kRandomGreedy);
  add(Algorithm::kBeam, 2);
  add(Algorithm::kBeam, 3);
  add(Algorithm::kBpp, 2);
  add(Algorithm::kBpp, 3);
  add(Algorithm::kFullTraverse);
  return out;
}

struct BenchOptions {
  std::vector<SearchConfig> algorithms = default_bench_algorithms();
  NoiseModel noise;
  int replicas = 1;
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  SolverOptions solver;
};

struct TrialRecord {
  std::string fixture;
  int replica = 0;
  std::size_t row = 0;
  std::uint64_t seed = 0;
  std::size_t steps = 0;
  bool correct = false;
  std::optional<double> objective;
};

struct BenchRow {
  SearchConfig config;
  std::size_t trials = 0;
  std::size_t correct = 0;
  double correct_rate = 0.0;
  double mean_steps = 0.0;
};

struct BenchReport {
  std::vector<BenchRow> rows;
  std::vector<TrialRecord> trials;
};

inline std::string algorithm_label(const SearchConfig& c) {
  std::string s(algorithm_name(c.algorithm));
  if (c.algorithm == Algorithm::kBeam || c.algorithm == Algorithm::kBpp) {
    s += "(k=" + std::to_string(c.beam_width) + ")";
  }
  return s;
}

inline std::uint64_t trial_seed(std::uint64_t seed, const std::string& fixture,
                                int replica) {
  return mix_seed(seed, fixture + "#" + std::to_string(replica));
}

// Runs one search and checks the chosen model against the reference
// objective.
inline TrialRecord run_trial(const Fixture& fixture, const SearchConfig& base,
                             const NoiseModel& noise_base, std::uint64_t seed,
                             const SolverOptions& solver = {}) {
  SearchConfig config = base;
  config.rng_seed = seed;
  NoiseModel noise = noise_base;
  noise.rng_seed = seed;
  OracleSuite suite(fixture.problem, noise, combine_fragments);
  const SearchOutcome outcome =
      run_search(fixture.problem.question, config, suite);
  TrialRecord t;
  t.fixture = fixture.name;
  t.seed = seed;
  t.steps = outcome.reasoning_steps;
  t.objective = path_objective(outcome.leaf_path(), solver);
  t.correct = t.objective &&
              std::fabs(*t.objective - fixture.reference_objective) <= 1e-6;
  return t;
}

inline BenchReport run_bench(const std::vector<Fixture>& fixtures,
                             const BenchOptions& options) {
  if (fixtures.empty()) {
    throw Error(Errc::kEmptyFixtureSet, "no fixtures to run");
  }
  if (options.algorithms.empty() || options.replicas < 1) {
    throw Error(Errc::kInvalidConfig, "need algorithms and replicas >= 1");
  }
  for (const auto& a : options.algorithms) a.check();

  struct Job {
    std::size_t fixture;
    int replica;
    std::size_t row;
  };
  std::vector<Job> jobs;
  for (std::size_t f = 0; f < fixtures.size(); ++f) {
    for (int r = 0; r < options.replicas; ++r) {
      for (std::size_t a = 0; a < options.algorithms.size(); ++a) {
        jobs.push_back({f, r, a});
      }
    }
  }
  std::vector<TrialRecord> trials(jobs.size());
  auto work = [&](std::size_t begin, std::size_t stride) {
    for (std::size_t i = begin; i < jobs.size(); i += stride) {
      const Job& j = jobs[i];
      const Fixture& fx = fixtures[j.fixture];
      trials[i] = run_trial(fx, options.algorithms[j.row], options.noise,
                            trial_seed(options.seed, fx.name, j.replica),
                            options.solver);
      trials[i].replica = j.replica;
      trials[i].row = j.row;
    }
  };
  const unsigned workers = std::max(1u, options.jobs);
  if (workers == 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w, workers);
    for (auto& t : pool) t.join();
  }

  BenchReport report;
  for (const auto& a : options.algorithms) report.rows.push_back({a});
  for (const auto& t : trials) {
    BenchRow& row = report.rows[t.row];
    ++row.trials;
    row.correct += t.correct ? 1 : 0;
    row.mean_steps += static_cast<double>(t.steps);
  }
  for (auto& row : report.rows) {
    row.correct_rate =
        static_cast<double>(row.correct) / static_cast<double>(row.trials);
    row.mean_steps /= static_cast<double>(row.trials);
  }
  report.trials = std::move(trials);
  return report;
}

namespace bench_detail {

inline std::string fixed(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

inline void config_columns(std::string& out, const SearchConfig& c) {
  const bool beam =
      c.algorithm == Algorithm::kBeam || c.algorithm == Algorithm::kBpp;
  out += std::string(algorithm_name(c.algorithm)) + ",";
  out += (beam ? std::to_string(c.beam_width) : "") + ",";
  out += (c.algorithm == Algorithm::kEpsilonGreedy ? fixed(c.epsilon) : "") +
         ",";
  out += (c.algorithm == Algorithm::kRandomGreedy ? fixed(c.threshold) : "") +
         ",";
  out += std::to_string(c.branching);
}

}  // namespace bench_detail

inline constexpr std::string_view kBenchCsvHeader =
    "algorithm,k,epsilon,threshold,branching,trials,correct,correct_rate,"
    "mean_steps";

inline std::string bench_csv(const BenchReport& report) {
  std::string out(kBenchCsvHeader);
  out += '\n';
  for (const auto& row : report.rows) {
    bench_detail::config_columns(out, row.config);
    out += "," + std::to_string(row.trials) + "," +
           std::to_string(row.correct) + "," +
           bench_detail::fixed(row.correct_rate) + "," +
           bench_detail::fixed(row.mean_steps) + "\n";
  }
  return out;
}

inline constexpr std::string_view kTrialCsvHeader =
    "fixture,replica,algorithm,k,epsilon,threshold,branching,seed,steps,"
    "correct,objective";

inline std::string trials_csv(const BenchReport& report) {
  std::string out(kTrialCsvHeader);
  out += '\n';
  for (const auto& t : report.trials) {
    out += t.fixture + "," + std::to_string(t.replica) + ",";
    bench_detail::config_columns(out, report.rows[t.row].config);
    out += "," + std::to_string(t.seed) + "," + std::to_string(t.steps) + "," +
           (t.correct ? "1" : "0") + "," +
           (t.objective ? bench_detail::fixed(*t.objective) : "") + "\n";
  }
  return out;
}

// Fixed-width human-readable table.
inline std::string bench_table(const BenchReport& report) {
  std::string out;
  char line[160];
  std::snprintf(line, sizeof line, "%-22s %8s %8s %12s %10s\n", "algorithm",
                "trials", "correct", "correct_rate", "steps");
  out += line;
  for (const auto& row : report.rows) {
    std::snprintf(line, sizeof line, "%-22s %8zu %8zu %12.4f %10.2f\n",
                  algorithm_label(row.config).c_str(), row.trials, row.correct,
                  row.correct_rate, row.mean_steps);
    out += line;
  }
  return out;
}

}  // namespace orsearch

#endif  // ORSEARCH_BENCH_HPP_
