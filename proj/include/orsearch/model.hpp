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

// Structured model: sets, parameters, variables, objective and constraints
// of an abstract optimization model together with its instance data.

#ifndef ORSEARCH_MODEL_HPP_
#define ORSEARCH_MODEL_HPP_

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace orsearch {

enum class VarType { kContinuous, kInteger, kBinary };
enum class Sense { kMin, kMax };

constexpr std::string_view vartype_text(VarType t) {
  switch (t) {
    case VarType::kContinuous: return "CONTINUOUS";
    case VarType::kInteger: return "INTEGER";
    case VarType::kBinary: return "BINARY";
  }
  return "CONTINUOUS";
}

constexpr std::string_view sense_text(Sense s) {
  return s == Sense::kMax ? "max" : "min";
}

// Parameter data: a number, or a (possibly nested) list of numbers.
struct NumTree {
  bool is_list = false;
  double value = 0.0;
  std::vector<NumTree> items;

  static NumTree scalar(double v) {
    NumTree t;
    t.value = v;
    return t;
  }
  static NumTree list(std::vector<NumTree> items) {
    NumTree t;
    t.is_list = true;
    t.items = std::move(items);
    return t;
  }
  // Convenience for tests and fixtures: a flat list of numbers.
  static NumTree vec(const std::vector<double>& values) {
    std::vector<NumTree> items;
    items.reserve(values.size());
    for (double v : values) items.push_back(scalar(v));
    return list(std::move(items));
  }

  // Value at a 1-based index path; the caller has validated the shape.
  double at(const std::vector<long>& index) const {
    const NumTree* node = this;
    for (long i : index) node = &node->items[static_cast<std::size_t>(i - 1)];
    return node->value;
  }

  bool operator==(const NumTree&) const = default;
};

struct SetDef {
  std::string name;
  std::string description;
  std::vector<long> data;

  std::size_t size() const { return data.size(); }
  bool operator==(const SetDef&) const = default;
};

struct ParamDef {
  std::string name;
  std::string description;
  std::string domain;
  NumTree data;

  bool operator==(const ParamDef&) const = default;
};

struct VarDef {
  std::string name;
  std::string description;
  std::string domain;
  VarType type = VarType::kContinuous;

  bool operator==(const VarDef&) const = default;
};

struct ObjectiveDef {
  std::string name;
  std::string description;
  Sense sense = Sense::kMin;
  std::string function;

  bool operator==(const ObjectiveDef&) const = default;
};

struct ConstraintDef {
  std::string name;
  std::string description;
  std::string domain;
  std::string function;

  bool operator==(const ConstraintDef&) const = default;
};

struct StructuredModel {
  std::vector<SetDef> sets;
  std::vector<ParamDef> parameters;
  std::vector<VarDef> variables;
  std::vector<ObjectiveDef> objectives;
  std::vector<ConstraintDef> constraints;

  const SetDef* find_set(std::string_view name) const {
    for (const auto& s : sets) {
      if (s.name == name) return &s;
    }
    return nullptr;
  }
  const ParamDef* find_parameter(std::string_view name) const {
    for (const auto& p : parameters) {
      if (p.name == name) return &p;
    }
    return nullptr;
  }
  const VarDef* find_variable(std::string_view name) const {
    for (const auto& v : variables) {
      if (v.name == name) return &v;
    }
    return nullptr;
  }

  bool operator==(const StructuredModel&) const = default;
};

}  // namespace orsearch

#endif  // ORSEARCH_MODEL_HPP_
