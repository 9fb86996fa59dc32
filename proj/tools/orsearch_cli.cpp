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

// orsearch command-line tool.
//
//   orsearch validate MODEL
//   orsearch instantiate MODEL [-o out.lp]
//   orsearch solve MODEL [--emit-lp out.lp] [--max-pivots N] [--max-nodes N]
//   orsearch search MODEL [--algorithm beam --beam-width 2 ...]
//   orsearch augment MODEL... [--plan kind=count,...] [-o out.jsonl]
//   orsearch bench [DIR | --synthetic N] [--csv out.csv] [--trials log.csv]
//
// Exit status: 0 success, 1 domain negative (violations, infeasible, wrong
// answer), 2 usage or I/O error.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "orsearch/orsearch.hpp"

namespace {

using namespace orsearch;

constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kUsage = 2;

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::kIo, "cannot write '" + path + "'");
  out << text;
  if (!out) throw Error(Errc::kIo, "write failed for '" + path + "'");
}

int exit_code_for(Errc code) {
  switch (code) {
    case Errc::kIo:
    case Errc::kSyntax:
    case Errc::kUnknownField:
    case Errc::kMissingRequiredComponent:
    case Errc::kWrongType:
    case Errc::kInvalidConfig:
      return kUsage;
    default:
      return kNegative;
  }
}

struct SearchFlags {
  std::string algorithm = "greedy";
  int branching = 3;
  int beam_width = 2;
  double epsilon = 0.1;
  double threshold = 0.05;
  double noise = 0.0;
  double correct_mean = 2.0;
  double incorrect_mean = -2.0;
  double judge_margin = 4.0;
  double judge_stddev = 1.0;
  bool perfect_judge = false;

  void add_to(CLI::App& cmd, bool with_algorithm) {
    if (with_algorithm) {
      cmd.add_option("--algorithm", algorithm,
                     "greedy, epsilon-greedy, random-greedy, beam, bpp, "
                     "full-traverse or direct")
          ->capture_default_str();
      cmd.add_option("--beam-width,-k", beam_width, "Beam width")
          ->capture_default_str();
    }
    cmd.add_option("--branching", branching, "Children per node")
        ->capture_default_str();
    cmd.add_option("--epsilon", epsilon, "Exploration probability")
        ->capture_default_str();
    cmd.add_option("--threshold", threshold, "Random-greedy window")
        ->capture_default_str();
    cmd.add_option("--noise", noise, "Scorer logit noise stddev")
        ->capture_default_str();
    cmd.add_option("--correct-mean", correct_mean, "Logit mean, planted path")
        ->capture_default_str();
    cmd.add_option("--incorrect-mean", incorrect_mean,
                   "Logit mean, other paths")
        ->capture_default_str();
    cmd.add_option("--judge-margin", judge_margin, "Preference logit margin")
        ->capture_default_str();
    cmd.add_option("--judge-stddev", judge_stddev, "Preference logit noise")
        ->capture_default_str();
    cmd.add_flag("--perfect-judge", perfect_judge,
                 "Saturated preference judge");
  }

  SearchConfig config(std::uint64_t seed) const {
    SearchConfig c;
    c.algorithm = parse_algorithm(algorithm);
    c.branching = branching;
    c.beam_width = beam_width;
    c.epsilon = epsilon;
    c.threshold = threshold;
    c.rng_seed = seed;
    return c;
  }

  NoiseModel noise_model(std::uint64_t seed) const {
    NoiseModel n;
    n.correct_logit_mean = correct_mean;
    n.incorrect_logit_mean = incorrect_mean;
    n.logit_stddev = noise;
    n.judge_margin = judge_margin;
    n.judge_stddev = judge_stddev;
    n.perfect_judge = perfect_judge;
    n.rng_seed = seed;
    return n;
  }
};

int cmd_validate(const std::string& path) {
  const auto violations = validate(parse_model(read_text_file(path)));
  for (const auto& v : violations) std::cout << v.to_string() << '\n';
  if (!violations.empty()) return kNegative;
  std::cout << "valid\n";
  return kOk;
}

int cmd_instantiate(const std::string& path, const std::string& output) {
  const ConcreteModel model = expand(parse_model(read_text_file(path)));
  for (const auto& w : model.warnings) std::cerr << "warning: " << w << '\n';
  const std::string lp = emit_lp(model);
  if (output.empty()) {
    std::cout << lp;
  } else {
    write_file(output, lp);
  }
  return kOk;
}

int cmd_solve(const std::string& path, const std::string& emit,
              const SolverOptions& options, bool relaxation,
              bool show_solution) {
  const ConcreteModel model = expand(parse_model(read_text_file(path)));
  for (const auto& w : model.warnings) std::cerr << "warning: " << w << '\n';
  if (!emit.empty()) write_file(emit, emit_lp(model));
  const SolveResult r =
      relaxation ? solve_lp(model, options) : solve_mip(model, options);
  if (r.status != SolveStatus::kOptimal) {
    std::cout << status_text(r.status) << '\n';
    return kNegative;
  }
  std::printf("Optimal %.6f\n", *r.objective_value);
  if (show_solution) {
    for (const auto& v : model.variables) {
      std::printf("%s %.6f\n", v.lp_name().c_str(), r.assignment[v.column]);
    }
  }
  return kOk;
}

int cmd_search(const std::string& path, const std::string& endpoint,
               const std::string& question_file, const SearchFlags& flags,
               std::uint64_t seed, const std::string& report_path) {
  const SearchConfig config = flags.config(seed);
  nlohmann::ordered_json report;
  int status = kOk;
  if (!endpoint.empty()) {
    HttpSuiteOptions http;
    http.endpoint = endpoint;
    HttpSuite suite(http);
    const std::string question = read_text_file(question_file);
    const SearchOutcome outcome = run_search(question, config, suite);
    report = search_report(outcome, config);
    report["retries"] = suite.retry_count();
  } else {
    const std::filesystem::path file(path);
    const Fixture fixture =
        make_fixture(file.stem().string(), parse_model(read_text_file(path)), seed);
    OracleSuite suite(fixture.problem, flags.noise_model(seed),
                      combine_fragments);
    const SearchOutcome outcome =
        run_search(fixture.problem.question, config, suite);
    report = search_report(outcome, config);
    const auto objective = path_objective(outcome.leaf_path());
    const bool correct =
        objective &&
        std::fabs(*objective - fixture.reference_objective) <= 1e-6;
    report["reference_objective"] = fixture.reference_objective;
    report["chosen_objective"] =
        objective ? nlohmann::ordered_json(*objective) : nullptr;
    report["correct"] = correct;
    if (!correct) status = kNegative;
  }
  const std::string text = report.dump(2) + "\n";
  if (report_path.empty()) {
    std::cout << text;
  } else {
    write_file(report_path, text);
  }
  return status;
}

AugmentPlan parse_plan(const std::string& text) {
  AugmentPlan plan;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    const std::string name = item.substr(0, eq);
    int count = 1;
    if (eq != std::string::npos) {
      try {
        count = std::stoi(item.substr(eq + 1));
      } catch (const std::exception&) {
        throw Error(Errc::kInvalidConfig, "bad count in plan item '" + item + "'");
      }
    }
    if (count < 0) {
      throw Error(Errc::kInvalidConfig, "negative count for '" + name + "'");
    }
    if (auto p = parse_positive_kind(name)) {
      plan.positive[*p] = count;
    } else if (auto n = parse_negative_kind(name)) {
      plan.negative[*n] = count;
    } else {
      throw Error(Errc::kInvalidConfig, "unknown perturbation '" + name + "'");
    }
  }
  return plan;
}

int cmd_augment(const std::vector<std::string>& paths, const std::string& plan,
                const std::string& malformed, std::uint64_t seed,
                const std::string& output) {
  std::vector<StructuredModel> models;
  for (const auto& p : paths) models.push_back(parse_model(read_text_file(p)));
  auto records = build_prm_dataset(models, parse_plan(plan), seed);
  if (!malformed.empty()) {
    std::stringstream lines(read_text_file(malformed));
    std::string line;
    std::size_t n = 0;
    while (std::getline(lines, line)) {
      ++n;
      if (line.empty()) continue;
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(line);
        records.push_back(malformed_record(j.at("question").get<std::string>(),
                                           j.at("text").get<std::string>(),
                                           seed));
      } catch (const nlohmann::json::exception& e) {
        throw Error(Errc::kSyntax, malformed + ":" + std::to_string(n) +
                                       ": expected {question, text}: " +
                                       e.what());
      }
    }
  }
  const std::string text = to_jsonl(records);
  if (output.empty()) {
    std::cout << text;
  } else {
    write_file(output, text);
  }
  return kOk;
}

std::vector<SearchConfig> parse_algorithms(const std::string& text,
                                           const SearchFlags& flags) {
  if (text.empty()) {
    auto out = default_bench_algorithms();
    for (auto& c : out) {
      c.branching = flags.branching;
      c.epsilon = flags.epsilon;
      c.threshold = flags.threshold;
    }
    return out;
  }
  std::vector<SearchConfig> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto colon = item.find(':');
    SearchFlags f = flags;
    f.algorithm = item.substr(0, colon);
    if (colon != std::string::npos) {
      try {
        f.beam_width = std::stoi(item.substr(colon + 1));
      } catch (const std::exception&) {
        throw Error(Errc::kInvalidConfig, "bad beam width in '" + item + "'");
      }
    }
    out.push_back(f.config(0));
  }
  return out;
}

int cmd_bench(const std::string& dir, std::size_t synthetic, int replicas,
              unsigned jobs, const std::string& algorithms,
              const SearchFlags& flags, std::uint64_t seed,
              const std::string& csv_path, const std::string& trials_path,
              bool csv_stdout) {
  if (dir.empty() == (synthetic == 0)) {
    throw Error(Errc::kInvalidConfig,
                "give either a fixture directory or --synthetic N");
  }
  const std::vector<Fixture> fixtures =
      dir.empty() ? synthetic_fixtures(synthetic, seed)
                  : load_fixtures(dir, seed);
  BenchOptions options;
  options.algorithms = parse_algorithms(algorithms, flags);
  options.noise = flags.noise_model(seed);
  options.replicas = replicas;
  options.seed = seed;
  options.jobs = jobs;
  const BenchReport report = run_bench(fixtures, options);
  const std::string csv = bench_csv(report);
  if (!csv_path.empty()) write_file(csv_path, csv);
  if (!trials_path.empty()) write_file(trials_path, trials_csv(report));
  std::cout << (csv_stdout ? csv : bench_table(report));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Structured optimization modeling and reward-guided search"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "TOML/INI file with option values");

  std::uint64_t seed = 0;
  app.add_option("--seed", seed, "Random seed")->capture_default_str();

  std::string model_path;
  auto* validate_cmd = app.add_subcommand("validate", "Check a model document");
  validate_cmd->add_option("model", model_path)->required();

  std::string lp_out;
  auto* inst_cmd =
      app.add_subcommand("instantiate", "Expand a model and print LP text");
  inst_cmd->add_option("model", model_path)->required();
  inst_cmd->add_option("-o,--output", lp_out, "Write LP text to a file");

  std::string emit_lp_path;
  SolverOptions solver;
  bool relaxation = false, show_solution = false;
  auto* solve_cmd = app.add_subcommand("solve", "Solve a model");
  solve_cmd->add_option("model", model_path)->required();
  solve_cmd->add_option("--emit-lp", emit_lp_path, "Also write LP text");
  solve_cmd->add_option("--max-pivots", solver.max_pivots, "Pivots per LP")
      ->capture_default_str();
  solve_cmd->add_option("--max-nodes", solver.max_nodes, "Branch-and-bound nodes")
      ->capture_default_str();
  solve_cmd->add_flag("--relaxation", relaxation, "Solve the LP relaxation");
  solve_cmd->add_flag("--show-solution", show_solution, "Print variable values");

  SearchFlags search_flags;
  std::string endpoint, question_file, report_path;
  auto* search_cmd = app.add_subcommand(
      "search", "Run a reward-guided search over a planted model");
  search_cmd->add_option("model", model_path, "Model providing the answer");
  search_cmd->add_option("--endpoint", endpoint,
                         "Remote generation/scoring service URL");
  search_cmd->add_option("--question-file", question_file,
                         "Question text for the remote service");
  search_cmd->add_option("--report", report_path, "Write the report to a file");
  search_flags.add_to(*search_cmd, true);

  std::vector<std::string> augment_models;
  std::string plan =
      "rename-sum-index=1,flip-inequality=1,set-data-tamper=1,"
      "function-edit=1,objective-reverse=1";
  std::string malformed, augment_out;
  auto* augment_cmd =
      app.add_subcommand("augment", "Build labeled prefix records");
  augment_cmd->add_option("models", augment_models)->required();
  augment_cmd->add_option("--plan", plan, "kind=count list")
      ->capture_default_str();
  augment_cmd->add_option("--malformed", malformed,
                          "JSONL of {question, text} unparseable outputs");
  augment_cmd->add_option("-o,--output", augment_out, "Write JSONL here");

  SearchFlags bench_flags;
  std::string fixture_dir, algorithms, csv_path, trials_path;
  std::size_t synthetic = 0;
  int replicas = 1;
  unsigned jobs = 1;
  bool csv_stdout = false;
  auto* bench_cmd = app.add_subcommand("bench", "Compare search algorithms");
  bench_cmd->add_option("fixtures", fixture_dir, "Directory of model files");
  bench_cmd->add_option("--synthetic", synthetic, "Generate N fixtures");
  bench_cmd->add_option("--replicas", replicas, "Trials per fixture")
      ->capture_default_str();
  bench_cmd->add_option("--jobs", jobs, "Worker threads")->capture_default_str();
  bench_cmd->add_option("--algorithms", algorithms,
                        "Comma list, e.g. greedy,beam:2,bpp:3");
  bench_cmd->add_option("--csv", csv_path, "Write the summary CSV");
  bench_cmd->add_option("--trials", trials_path, "Write the per-trial CSV");
  bench_cmd->add_flag("--print-csv", csv_stdout, "Print CSV instead of a table");
  bench_flags.add_to(*bench_cmd, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*validate_cmd) return cmd_validate(model_path);
    if (*inst_cmd) return cmd_instantiate(model_path, lp_out);
    if (*solve_cmd) {
      return cmd_solve(model_path, emit_lp_path, solver, relaxation,
                       show_solution);
    }
    if (*search_cmd) {
      if (endpoint.empty() == model_path.empty()) {
        throw Error(Errc::kInvalidConfig,
                    "give either a model file or --endpoint");
      }
      if (!endpoint.empty() && question_file.empty()) {
        throw Error(Errc::kInvalidConfig, "--endpoint needs --question-file");
      }
      return cmd_search(model_path, endpoint, question_file, search_flags, seed,
                        report_path);
    }
    if (*augment_cmd) {
      return cmd_augment(augment_models, plan, malformed, seed, augment_out);
    }
    if (*bench_cmd) {
      return cmd_bench(fixture_dir, synthetic, replicas, jobs, algorithms,
                       bench_flags, seed, csv_path, trials_path, csv_stdout);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
