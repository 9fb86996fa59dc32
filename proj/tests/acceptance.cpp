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

// Acceptance checks. One PASS/FAIL line per criterion; exit status 1 if any
// criterion fails.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "orsearch/orsearch.hpp"
#include "support/random_models.hpp"

namespace orsearch {
namespace {

using Clock = std::chrono::steady_clock;

struct Verdict {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

// 1 -----------------------------------------------------------------------
Verdict step_counts() {
  const auto t0 = Clock::now();
  const Fixture fx = synthetic_fixtures(1, 1).front();
  struct Case {
    Algorithm a;
    int k;
    std::size_t steps;
  };
  const std::vector<Case> cases{
      {Algorithm::kGreedy, 2, 9},  {Algorithm::kBeam, 2, 15},
      {Algorithm::kBeam, 3, 21},   {Algorithm::kBpp, 2, 15},
      {Algorithm::kBpp, 3, 21},    {Algorithm::kFullTraverse, 2, 39}};
  Verdict v{true, ""};
  for (const auto& c : cases) {
    SearchConfig cfg;
    cfg.algorithm = c.a;
    cfg.beam_width = c.k;
    cfg.branching = 3;
    OracleSuite suite(fx.problem, NoiseModel{}, combine_fragments);
    const auto out = run_search(fx.problem.question, cfg, suite);
    v.detail += algorithm_label(cfg) + "=" + std::to_string(out.reasoning_steps) + " ";
    v.pass &= out.reasoning_steps == c.steps;
  }
  const double t = seconds_since(t0);
  v.pass &= t < 1.0;
  v.detail += fmt("(%.3f s)", t);
  return v;
}

// 2 -----------------------------------------------------------------------
Errc parse_error(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::kIo;  // sentinel: no error raised
}

Verdict grammar() {
  const auto t0 = Clock::now();
  int ok = 0, total = 0;
  auto check = [&](bool cond) {
    ++total;
    ok += cond ? 1 : 0;
  };
  const auto ref = [](const char* n, std::vector<std::string> s = {}) {
    return Formula::ref(n, std::move(s));
  };
  const auto mul = [](Formula a, Formula b) {
    return Formula::binary(NodeKind::kMul, std::move(a), std::move(b));
  };

  const auto split = parse_formula("x + y < 0, y + z < 1");
  check(split.size() == 2 && split[0].is_comparison() && split[1].is_comparison());

  const auto merged = parse_formula("<sum>_{i <in> I} <sum>_{j <in> J} x_{i,j}");
  check(merged.size() == 1 &&
        merged[0] == Formula::sum({{{"i", "I"}, {"j", "J"}}}, ref("x", {"i", "j"})) &&
        merged[0].body().kind == NodeKind::kRef);

  const auto implicit = parse_formula("<sum>_{i <in> I}(a_{i}x_{i} + b_{i}y_{i})");
  check(implicit.size() == 1 &&
        implicit[0] == Formula::sum({{{"i", "I"}}},
                                    Formula::binary(NodeKind::kAdd,
                                                    mul(ref("a", {"i"}), ref("x", {"i"})),
                                                    mul(ref("b", {"i"}), ref("y", {"i"})))));

  const auto chain = parse_formula("a<b<c");
  check(chain.size() == 1 &&
        chain[0] == Formula::chain({ref("a"), ref("b"), ref("c")},
                                   {Relation::kLT, Relation::kLT}));

  check(parse_error([] { parse_formula("<sum>_{i <in> Successors_{k}} x_{i} <= 1"); }) ==
        Errc::kUnsupportedParametrizedSumDomain);
  check(parse_error([] { parse_domain("{i <in> P {k <in> A}}"); }) == Errc::kNestedDomain);
  check(parse_error([] { parse_formula("<sum>_{i <in> P {k <in> A}} x_{i}"); }) ==
        Errc::kNestedDomain);
  check(parse_error([] { parse_formula("x_{i,1} <= 5"); }) ==
        Errc::kUnsupportedNumericSubscript);

  const double t = seconds_since(t0);
  return {ok == total && t < 1.0,
          std::to_string(ok) + "/" + std::to_string(total) + " structural checks " +
              fmt("(%.3f s)", t)};
}

// 3 -----------------------------------------------------------------------
Verdict solver_equivalence() {
  const auto t0 = Clock::now();
  Rng rng(mix_seed(3, "acceptance"));
  int agree = 0, infeasible = 0;
  for (int i = 0; i < 100; ++i) {
    const auto mip = testing::random_boxed_mip(rng, 6, 8, 8);
    const auto expected = testing::brute_force(mip);
    const auto got = solve_mip(mip.model);
    if (!expected) {
      ++infeasible;
      agree += got.status == SolveStatus::kInfeasible;
    } else {
      agree += got.status == SolveStatus::kOptimal &&
               std::fabs(*got.objective_value - *expected) <= 1e-6;
    }
  }
  const double t = seconds_since(t0);
  return {agree == 100 && t < 60.0,
          std::to_string(agree) + "/100 agree (" + std::to_string(infeasible) +
              " infeasible) " + fmt("(%.2f s)", t)};
}

// 4 -----------------------------------------------------------------------
Verdict expansion_equivalence() {
  Rng rng(mix_seed(4, "acceptance"));
  testing::ModelGenerator gen(rng);
  int agree = 0;
  for (int m = 0; m < 200; ++m) {
    const StructuredModel model = gen.make();
    const ConcreteModel cm = expand(model);
    for (int a = 0; a < 5; ++a) {
      std::vector<double> x;
      const auto assignment = gen.random_assignment(cm, x);
      const NaiveEvaluation naive = evaluate_naive(model, assignment, 1e-6);
      bool ok = std::fabs(cm.objective.evaluate(x) - naive.objective_value) <= 1e-9 &&
                naive.constraints.size() == cm.constraints.size();
      for (std::size_t r = 0; ok && r < cm.constraints.size(); ++r) {
        const auto& row = cm.constraints[r];
        ok = relation_holds(row.lhs.evaluate(x), row.relation, row.rhs, 1e-6) ==
             naive.constraints[r].satisfied;
      }
      agree += ok;
    }
  }
  return {agree == 1000, std::to_string(agree) + "/1000 agreements"};
}

// 5 -----------------------------------------------------------------------
Verdict positive_conservation() {
  int variants = 0, kept = 0;
  for (std::uint64_t s = 0; s < 50; ++s) {
    const StructuredModel model = random_fixture_model(mix_seed(5, std::to_string(s)));
    const double reference = *model_objective(model);
    for (PositiveKind kind : kPositiveKinds) {
      for (int rep = 0; rep < 3; ++rep) {
        Rng rng(mix_seed(s, std::string(kind_name(kind)) + std::to_string(rep)));
        const auto objective = model_objective(perturb_positive(model, kind, rng));
        ++variants;
        kept += objective && std::fabs(*objective - reference) <= 1e-6;
      }
    }
  }
  return {kept == variants,
          std::to_string(kept) + "/" + std::to_string(variants) +
              " variants keep the optimum over 50 models"};
}

// 6 -----------------------------------------------------------------------
Verdict perfect_judge_dominance(const std::vector<Fixture>& fixtures) {
  int with_correct = 0, violations = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const Fixture& fx = fixtures[static_cast<std::size_t>(trial) % fixtures.size()];
    const std::uint64_t seed = mix_seed(6, "dominance#" + std::to_string(trial));
    NoiseModel noise;
    noise.logit_stddev = 3.0;
    noise.perfect_judge = true;
    noise.rng_seed = seed;
    OracleSuite suite(fx.problem, noise, combine_fragments);
    SearchConfig cfg;
    cfg.algorithm = Algorithm::kBpp;
    cfg.beam_width = 2 + trial % 2;
    cfg.rng_seed = seed;
    const auto out = run_search(fx.problem.question, cfg, suite);
    bool queue_has_correct = false;
    for (const auto& c : out.final_queue) {
      queue_has_correct |= suite.is_planted_leaf(out.tree.path(c.node_id));
    }
    if (!queue_has_correct) continue;
    ++with_correct;
    violations += !suite.is_planted_leaf(out.leaf_path());
  }
  return {violations == 0 && with_correct > 0,
          std::to_string(violations) + " violations in " + std::to_string(with_correct) +
              " of 500 trials with a correct leaf in the final queue"};
}

Verdict noisy_ordering(const std::vector<Fixture>& fixtures) {
  BenchOptions o;
  o.algorithms.clear();
  auto add = [&](Algorithm a, int k) {
    SearchConfig c;
    c.algorithm = a;
    c.beam_width = k;
    o.algorithms.push_back(c);
  };
  add(Algorithm::kGreedy, 2);
  add(Algorithm::kBeam, 2);
  add(Algorithm::kBeam, 3);
  add(Algorithm::kBpp, 2);
  add(Algorithm::kBpp, 3);
  o.noise.logit_stddev = 3.0;
  o.noise.judge_stddev = 1.0;
  o.noise.judge_margin = 4.0;
  o.replicas = 5;
  o.seed = 1;
  const BenchReport r = run_bench(fixtures, o);
  const double greedy = r.rows[0].correct_rate, beam2 = r.rows[1].correct_rate,
               beam3 = r.rows[2].correct_rate, bpp2 = r.rows[3].correct_rate,
               bpp3 = r.rows[4].correct_rate;
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "greedy=%.3f beam2=%.3f beam3=%.3f bpp2=%.3f bpp3=%.3f over %zu fixtures x 5",
                greedy, beam2, beam3, bpp2, bpp3, fixtures.size());
  return {bpp2 >= beam2 && bpp3 >= beam3 && beam2 >= greedy - 0.02, buf};
}

Verdict bpp_properties() {
  const auto t0 = Clock::now();
  const std::vector<Fixture> fixtures = synthetic_fixtures(200, 6);
  const Verdict a = perfect_judge_dominance(fixtures);
  const Verdict b = noisy_ordering(fixtures);
  const double t = seconds_since(t0);
  return {a.pass && b.pass && t < 300.0,
          std::string("(a) ") + (a.pass ? "ok " : "FAIL ") + a.detail + "; (b) " +
              (b.pass ? "ok " : "FAIL ") + b.detail + " " + fmt("(%.1f s)", t)};
}

// 7 -----------------------------------------------------------------------
Verdict score_equations() {
  const bool s0 = sigmoid(0.0) == 0.5;
  const auto agg = aggregate_preference({{0.5, 0.8, 0.6}, {0.2, 0.5, 0.5}, {0.4, 0.5, 0.5}});
  const bool a = std::fabs(agg[0] - 0.7) <= 1e-12;
  Rng rng(7);
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const double ab = sigmoid(8 * rng.normal()), ba = sigmoid(8 * rng.normal());
    worst = std::max(worst, std::fabs(symmetrized_preference(ab, ba) +
                                      symmetrized_preference(ba, ab) - 1.0));
  }
  const bool sym = worst <= 1e-12;
  return {s0 && a && sym, fmt("sigmoid(0)=%.17g ", sigmoid(0.0)) +
                              fmt("S(A)=%.17g ", agg[0]) +
                              fmt("max|S(A>B)+S(B>A)-1|=%.3g", worst)};
}

// 8 -----------------------------------------------------------------------
std::string capture(const std::string& args, int& status) {
  const std::string cmd = std::string(ORSEARCH_CLI_PATH) + " " + args + " 2>/dev/null";
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) {
    status = -1;
    return out;
  }
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  const int raw = pclose(pipe);
  status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return out;
}

Verdict determinism() {
  const std::string samples = ORSEARCH_SAMPLES_DIR;
  const std::vector<std::string> invocations{
      "bench --synthetic 6 --replicas 2 --noise 3 --seed 7 --print-csv",
      "bench " + samples + "/fixtures --noise 3 --seed 7 --jobs 2 --print-csv",
      "search " + samples + "/fixtures/transport.json --algorithm bpp -k 3 --noise 3 --seed 7",
      "search " + samples + "/fixtures/diet.json --algorithm epsilon-greedy --epsilon 0.5 --seed 7",
      "augment " + samples + "/production.json " + samples + "/fixtures/knapsack.json --seed 7",
  };
  int identical = 0;
  for (const auto& args : invocations) {
    int status = 0;
    const std::string first = capture(args, status);
    bool same = !first.empty() && status >= 0;
    for (int rep = 1; rep < 10; ++rep) {
      int s = 0;
      same &= capture(args, s) == first && s == status;
    }
    identical += same;
  }
  return {identical == static_cast<int>(invocations.size()),
          std::to_string(identical) + "/" + std::to_string(invocations.size()) +
              " invocations byte-identical over 10 runs"};
}

}  // namespace
}  // namespace orsearch

int main() {
  using namespace orsearch;
  const std::vector<std::pair<const char*, Verdict (*)()>> criteria{
      {"1 step counts", step_counts},
      {"2 grammar conformance", grammar},
      {"3 solver vs enumeration", solver_equivalence},
      {"4 expansion vs interpreter", expansion_equivalence},
      {"5 positive perturbations keep the optimum", positive_conservation},
      {"6 BPP properties", bpp_properties},
      {"7 score equations", score_equations},
      {"8 CLI determinism", determinism},
  };
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    Verdict v;
    try {
      v = fn();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s %s: %s\n", v.pass ? "PASS" : "FAIL", name, v.detail.c_str());
    std::fflush(stdout);
    failed += !v.pass;
  }
  return failed == 0 ? 0 : 1;
}
