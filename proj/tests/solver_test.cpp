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
#include <string>
#include <vector>

#include "orsearch/orsearch.hpp"
#include "support/random_models.hpp"

namespace orsearch {
namespace {

// Scalar-variable model written directly as formulas.
StructuredModel scalar_model(const std::vector<std::string>& vars, VarType type,
                             Sense sense, const std::string& objective,
                             const std::vector<std::string>& constraints) {
  StructuredModel m;
  for (const auto& v : vars) m.variables.push_back({v, "", "", type});
  m.objectives.push_back({"goal", "", sense, objective});
  for (std::size_t k = 0; k < constraints.size(); ++k) {
    m.constraints.push_back({"c" + std::to_string(k + 1), "", "", constraints[k]});
  }
  return m;
}

SolveResult mip(const StructuredModel& m, const SolverOptions& o = {}) {
  return solve_mip(expand(m), o);
}

SolveResult lp(const StructuredModel& m, const SolverOptions& o = {}) {
  return solve_lp(expand(m), o);
}

TEST(Solver, BoundedMaximum) {
  const auto r = lp(scalar_model({"x"}, VarType::kContinuous, Sense::kMax, "x",
                                 {"x <= 3"}));
  ASSERT_EQ(r.status, SolveStatus::kOptimal);
  EXPECT_NEAR(*r.objective_value, 3.0, 1e-9);
  EXPECT_NEAR(r.assignment[0], 3.0, 1e-9);
}

TEST(Solver, InfeasibleAndUnbounded) {
  const auto infeasible = scalar_model({"x"}, VarType::kContinuous, Sense::kMax,
                                       "x", {"x >= 1", "x <= 0"});
  EXPECT_EQ(lp(infeasible).status, SolveStatus::kInfeasible);
  EXPECT_EQ(mip(infeasible).status, SolveStatus::kInfeasible);
  EXPECT_FALSE(lp(infeasible).objective_value.has_value());

  const auto unbounded =
      scalar_model({"x", "y"}, VarType::kInteger, Sense::kMax, "x - y",
                   {"y <= 2"});
  EXPECT_EQ(lp(unbounded).status, SolveStatus::kUnbounded);
  EXPECT_EQ(mip(unbounded).status, SolveStatus::kUnbounded);
}

TEST(Solver, ProductionExample) {
  const auto m = parse_model_file(ORSEARCH_SAMPLES_DIR "/production.json");
  const auto r = mip(m);
  ASSERT_EQ(r.status, SolveStatus::kOptimal);
  EXPECT_NEAR(*r.objective_value, 20.0, 1e-9);
  EXPECT_EQ(r.assignment, (std::vector<double>{0.0, 4.0}));
}

TEST(Solver, EqualityAndNegativeRightHandSides) {
  const auto r = lp(scalar_model({"x", "y"}, VarType::kContinuous, Sense::kMin,
                                 "x + y + 1", {"x - y = -2", "x + y >= 4"}));
  ASSERT_EQ(r.status, SolveStatus::kOptimal);
  EXPECT_NEAR(*r.objective_value, 5.0, 1e-9);
  EXPECT_NEAR(r.assignment[1] - r.assignment[0], 2.0, 1e-9);
}

TEST(Solver, DegenerateCyclingInstance) {
  const auto r = lp(scalar_model(
      {"a", "b", "c", "d"}, VarType::kContinuous, Sense::kMax,
      "0.75 a - 20 b + 0.5 c - 6 d",
      {"0.25 a - 8 b - c + 9 d <= 0", "0.5 a - 12 b - 0.5 c + 3 d <= 0", "c <= 1"}));
  ASSERT_EQ(r.status, SolveStatus::kOptimal);
  EXPECT_NEAR(*r.objective_value, 1.25, 1e-9);
}

TEST(Solver, IntegralityGap) {
  const auto m = scalar_model({"x", "y"}, VarType::kInteger, Sense::kMax,
                              "8 x + 5 y", {"x + y <= 6", "9 x + 5 y <= 45"});
  const auto relaxed = lp(m);
  ASSERT_EQ(relaxed.status, SolveStatus::kOptimal);
  EXPECT_NEAR(*relaxed.objective_value, 41.25, 1e-9);
  const auto exact = mip(m);
  ASSERT_EQ(exact.status, SolveStatus::kOptimal);
  EXPECT_NEAR(*exact.objective_value, 40.0, 1e-9);
  EXPECT_GT(exact.nodes, 1u);
}

TEST(Solver, BinaryParityInfeasible) {
  const auto m = scalar_model({"a", "b"}, VarType::kBinary, Sense::kMin, "a + b",
                              {"2 a + 2 b = 1"});
  EXPECT_EQ(lp(m).status, SolveStatus::kOptimal);
  EXPECT_EQ(mip(m).status, SolveStatus::kInfeasible);
}

TEST(Solver, BinaryColumnsStayInUnitBox) {
  const auto r = lp(scalar_model({"a"}, VarType::kBinary, Sense::kMax, "a", {"a <= 7"}));
  ASSERT_EQ(r.status, SolveStatus::kOptimal);
  EXPECT_NEAR(*r.objective_value, 1.0, 1e-9);
}

TEST(Solver, Limits) {
  const auto m = scalar_model({"x", "y"}, VarType::kInteger, Sense::kMax,
                              "8 x + 5 y", {"x + y <= 6", "9 x + 5 y <= 45"});
  SolverOptions few_pivots;
  few_pivots.max_pivots = 0;
  EXPECT_EQ(lp(m, few_pivots).status, SolveStatus::kIterationLimit);
  SolverOptions one_node;
  one_node.max_nodes = 1;
  EXPECT_EQ(mip(m, one_node).status, SolveStatus::kIterationLimit);
}

TEST(Solver, MatchesEnumerationOnRandomBoxedPrograms) {
  Rng rng(2024);
  int feasible = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const auto boxed = testing::random_boxed_mip(rng, 4, 6, 6);
    const auto expected = testing::brute_force(boxed);
    const auto r = solve_mip(boxed.model);
    if (!expected) {
      EXPECT_EQ(r.status, SolveStatus::kInfeasible) << "trial " << trial;
      continue;
    }
    ++feasible;
    ASSERT_EQ(r.status, SolveStatus::kOptimal) << "trial " << trial;
    EXPECT_NEAR(*r.objective_value, *expected, 1e-6) << "trial " << trial;
  }
  EXPECT_GT(feasible, 150);
}

TEST(Solver, SolutionsAreFeasibleIntegralAndBoundedByRelaxation) {
  Rng rng(77);
  for (int trial = 0; trial < 200; ++trial) {
    const auto boxed = testing::random_boxed_mip(rng);
    const auto exact = solve_mip(boxed.model);
    if (exact.status != SolveStatus::kOptimal) continue;
    const auto& m = boxed.model;
    for (const auto& c : m.constraints) {
      EXPECT_TRUE(relation_holds(c.lhs.evaluate(exact.assignment), c.relation,
                                 c.rhs, 1e-6))
          << c.name;
    }
    for (double v : exact.assignment) EXPECT_EQ(v, std::round(v));
    const auto relaxed = solve_lp(m);
    ASSERT_EQ(relaxed.status, SolveStatus::kOptimal);
    if (m.sense == Sense::kMax) {
      EXPECT_GE(*relaxed.objective_value, *exact.objective_value - 1e-6);
    } else {
      EXPECT_LE(*relaxed.objective_value, *exact.objective_value + 1e-6);
    }
  }
}

TEST(Solver, StructuredSolutionsPassNaiveCheck) {
  for (const char* name : {"transport", "diet", "knapsack", "planning"}) {
    const auto m = parse_model_file(std::string(ORSEARCH_SAMPLES_DIR "/fixtures/") +
                                    name + ".json");
    const ConcreteModel cm = expand(m);
    const auto r = solve_mip(cm);
    ASSERT_EQ(r.status, SolveStatus::kOptimal) << name;
    const auto naive = evaluate_naive(m, to_assignment(cm, r.assignment));
    EXPECT_NEAR(naive.objective_value, *r.objective_value, 1e-9) << name;
    for (const auto& c : naive.constraints) EXPECT_TRUE(c.satisfied) << c.name;
  }
}

TEST(Solver, FixtureObjectives) {
  const std::vector<std::pair<std::string, double>> expected{
      {"transport", 127}, {"diet", 46}, {"knapsack", 46}, {"planning", 60}};
  for (const auto& [name, value] : expected) {
    const auto m = parse_model_file(std::string(ORSEARCH_SAMPLES_DIR "/fixtures/") +
                                    name + ".json");
    const auto r = mip(m);
    ASSERT_EQ(r.status, SolveStatus::kOptimal) << name;
    EXPECT_NEAR(*r.objective_value, value, 1e-6) << name;
  }
}

}  // namespace
}  // namespace orsearch
