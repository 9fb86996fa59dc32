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

#ifndef ORSEARCH_VALIDATE_HPP_
#define ORSEARCH_VALIDATE_HPP_

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "orsearch/error.hpp"
#include "orsearch/formula.hpp"
#include "orsearch/model.hpp"

namespace orsearch {

enum class Rule {
  kInvalidIdentifier,
  kDuplicateName,
  kSetNotContiguous,
  kMalformedDomain,
  kUnknownSet,
  kScalarExpected,
  kListExpected,
  kDimensionMismatch,
  kMissingVariables,
  kObjectiveCount,
  kMalformedFormula,
};

constexpr std::string_view rule_name(Rule r) {
  switch (r) {
    case Rule::kInvalidIdentifier: return "InvalidIdentifier";
    case Rule::kDuplicateName: return "DuplicateName";
    case Rule::kSetNotContiguous: return "SetNotContiguous";
    case Rule::kMalformedDomain: return "MalformedDomain";
    case Rule::kUnknownSet: return "UnknownSet";
    case Rule::kScalarExpected: return "ScalarExpected";
    case Rule::kListExpected: return "ListExpected";
    case Rule::kDimensionMismatch: return "DimensionMismatch";
    case Rule::kMissingVariables: return "MissingVariables";
    case Rule::kObjectiveCount: return "ObjectiveCount";
    case Rule::kMalformedFormula: return "MalformedFormula";
  }
  return "Unknown";
}

struct Violation {
  std::string component;  // "set", "parameter", ...
  Rule rule;
  std::string path;  // e.g. "parameter[0].data[1]"
  std::string message;

  std::string to_string() const {
    return std::string(rule_name(rule)) + " " + path + ": " + message;
  }
};

namespace validate_detail {

struct Checker {
  const StructuredModel& model;
  std::vector<Violation> out;

  void add(const char* component, Rule rule, std::string path,
           std::string message) {
    out.push_back({component, rule, std::move(path), std::move(message)});
  }

  // Returns the set sizes of a domain, or false after recording a violation.
  bool domain_sizes(const char* component, const std::string& path,
                    const std::string& text, std::vector<std::size_t>& sizes) {
    DomainSpec spec;
    try {
      spec = parse_domain(text);
    } catch (const Error& e) {
      add(component, Rule::kMalformedDomain, path + ".domain", e.what());
      return false;
    }
    bool ok = true;
    for (const auto& b : spec.bindings) {
      const SetDef* s = model.find_set(b.set_name);
      if (s == nullptr) {
        add(component, Rule::kUnknownSet, path + ".domain",
            "unknown set '" + b.set_name + "'");
        ok = false;
        continue;
      }
      sizes.push_back(s->size());
    }
    return ok;
  }

  void check_shape(const std::string& path, const NumTree& t,
                   const std::vector<std::size_t>& sizes, std::size_t depth) {
    if (depth == sizes.size()) {
      if (t.is_list) {
        add("parameter", Rule::kDimensionMismatch, path,
            "data nested deeper than the domain");
      }
      return;
    }
    if (!t.is_list) {
      add("parameter", Rule::kDimensionMismatch, path,
          "expected a list of " + std::to_string(sizes[depth]) + " entries");
      return;
    }
    if (t.items.size() != sizes[depth]) {
      add("parameter", Rule::kDimensionMismatch, path,
          "has " + std::to_string(t.items.size()) + " entries, domain needs " +
              std::to_string(sizes[depth]));
      return;
    }
    for (std::size_t i = 0; i < t.items.size(); ++i) {
      check_shape(path + "[" + std::to_string(i) + "]", t.items[i], sizes,
                  depth + 1);
    }
  }

  void name(const char* component, const std::string& path,
            const std::string& n, std::map<std::string, std::string>& seen) {
    if (!is_identifier(n)) {
      add(component, Rule::kInvalidIdentifier, path + ".name",
          "'" + n + "' is not a valid identifier");
    }
    auto [it, fresh] = seen.emplace(n, path);
    if (!fresh) {
      add(component, Rule::kDuplicateName, path + ".name",
          "'" + n + "' already declared at " + it->second);
    }
  }

  void formula(const char* component, const std::string& path,
               const std::string& text) {
    try {
      parse_formula(text);
    } catch (const Error& e) {
      add(component, Rule::kMalformedFormula, path + ".function", e.what());
    }
  }

  void run() {
    std::map<std::string, std::string> seen;
    for (std::size_t i = 0; i < model.sets.size(); ++i) {
      const auto& s = model.sets[i];
      const std::string path = "set[" + std::to_string(i) + "]";
      name("set", path, s.name, seen);
      bool contiguous = !s.data.empty();
      for (std::size_t k = 0; k < s.data.size() && contiguous; ++k) {
        contiguous = s.data[k] == static_cast<long>(k + 1);
      }
      if (!contiguous) {
        add("set", Rule::kSetNotContiguous, path + ".data",
            "data must be the sequence 1..n with n >= 1");
      }
    }
    for (std::size_t i = 0; i < model.parameters.size(); ++i) {
      const auto& p = model.parameters[i];
      const std::string path = "parameter[" + std::to_string(i) + "]";
      name("parameter", path, p.name, seen);
      std::vector<std::size_t> sizes;
      if (!domain_sizes("parameter", path, p.domain, sizes)) continue;
      if (sizes.empty()) {
        if (p.data.is_list) {
          add("parameter", Rule::kScalarExpected, path + ".data",
              "empty domain requires a number");
        }
      } else if (!p.data.is_list) {
        add("parameter", Rule::kListExpected, path + ".data",
            "indexed parameter requires a list");
      } else {
        check_shape(path + ".data", p.data, sizes, 0);
      }
    }
    if (model.variables.empty()) {
      add("variable", Rule::kMissingVariables, "variable",
          "at least one variable is required");
    }
    for (std::size_t i = 0; i < model.variables.size(); ++i) {
      const auto& v = model.variables[i];
      const std::string path = "variable[" + std::to_string(i) + "]";
      name("variable", path, v.name, seen);
      std::vector<std::size_t> sizes;
      domain_sizes("variable", path, v.domain, sizes);
    }
    if (model.objectives.size() != 1) {
      add("objective", Rule::kObjectiveCount, "objective",
          "exactly one objective is required, found " +
              std::to_string(model.objectives.size()));
    }
    for (std::size_t i = 0; i < model.objectives.size(); ++i) {
      const auto& o = model.objectives[i];
      const std::string path = "objective[" + std::to_string(i) + "]";
      name("objective", path, o.name, seen);
      formula("objective", path, o.function);
    }
    for (std::size_t i = 0; i < model.constraints.size(); ++i) {
      const auto& c = model.constraints[i];
      const std::string path = "constraint[" + std::to_string(i) + "]";
      name("constraint", path, c.name, seen);
      std::vector<std::size_t> sizes;
      domain_sizes("constraint", path, c.domain, sizes);
      formula("constraint", path, c.function);
    }
  }
};

}  // namespace validate_detail

// Checks every schema invariant. Never throws on a parsed model; an empty
// result means the model is consistent.
inline std::vector<Violation> validate(const StructuredModel& model) {
  validate_detail::Checker checker{model, {}};
  checker.run();
  return std::move(checker.out);
}

}  // namespace orsearch

#endif  // ORSEARCH_VALIDATE_HPP_
