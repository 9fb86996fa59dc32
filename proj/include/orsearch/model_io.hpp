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

// JSON encoding of StructuredModel, plus the split into the three
// reasoning-layer fragments (sets+parameters, variables,
// objective+constraints) used by the search tree.

#ifndef ORSEARCH_MODEL_IO_HPP_
#define ORSEARCH_MODEL_IO_HPP_

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "orsearch/error.hpp"
#include "orsearch/model.hpp"

namespace orsearch {

namespace model_io_detail {

using nlohmann::json;

inline std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

inline void check_fields(const json& obj, const std::string& path,
                         std::initializer_list<std::string_view> allowed) {
  if (!obj.is_object()) {
    throw Error(Errc::kWrongType, path + " must be an object");
  }
  for (const auto& [key, _] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw Error(Errc::kUnknownField, path + "." + key);
    }
  }
}

inline std::string get_string(const json& obj, const std::string& path,
                              const char* key, bool required) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    if (required) {
      throw Error(Errc::kMissingRequiredComponent, path + "." + key);
    }
    return {};
  }
  if (!it->is_string()) {
    throw Error(Errc::kWrongType, path + "." + key + " must be a string");
  }
  return it->get<std::string>();
}

inline NumTree to_tree(const json& j, const std::string& path) {
  if (j.is_number()) return NumTree::scalar(j.get<double>());
  if (j.is_array()) {
    std::vector<NumTree> items;
    items.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
      items.push_back(to_tree(j[i], path + "[" + std::to_string(i) + "]"));
    }
    return NumTree::list(std::move(items));
  }
  throw Error(Errc::kWrongType, path + " must be a number or a list");
}

inline nlohmann::ordered_json number_json(double v) {
  if (std::isfinite(v) && v == std::trunc(v) && std::fabs(v) < 9.0e15) {
    return static_cast<long long>(v);
  }
  return v;
}

inline nlohmann::ordered_json from_tree(const NumTree& t) {
  if (!t.is_list) return number_json(t.value);
  auto arr = nlohmann::ordered_json::array();
  for (const auto& item : t.items) arr.push_back(from_tree(item));
  return arr;
}

inline const json& component(const json& doc, const char* key, bool required,
                             const json& empty) {
  auto it = doc.find(key);
  if (it == doc.end()) {
    if (required) throw Error(Errc::kMissingRequiredComponent, key);
    return empty;
  }
  if (!it->is_array()) {
    throw Error(Errc::kWrongType, std::string(key) + " must be a list");
  }
  return *it;
}

inline StructuredModel from_json(const json& doc) {
  if (!doc.is_object()) {
    throw Error(Errc::kWrongType, "model document must be an object");
  }
  check_fields(doc, "model",
               {"set", "parameter", "variable", "objective", "constraint"});
  const json empty = json::array();
  StructuredModel m;

  const json& sets = component(doc, "set", false, empty);
  for (std::size_t i = 0; i < sets.size(); ++i) {
    const std::string path = "set[" + std::to_string(i) + "]";
    check_fields(sets[i], path, {"name", "description", "data"});
    SetDef s;
    s.name = get_string(sets[i], path, "name", true);
    s.description = get_string(sets[i], path, "description", false);
    auto it = sets[i].find("data");
    if (it == sets[i].end()) {
      throw Error(Errc::kMissingRequiredComponent, path + ".data");
    }
    if (!it->is_array()) {
      throw Error(Errc::kWrongType, path + ".data must be a list");
    }
    for (const auto& e : *it) {
      if (!e.is_number() || e.get<double>() != std::trunc(e.get<double>())) {
        throw Error(Errc::kWrongType, path + ".data must hold integers");
      }
      s.data.push_back(static_cast<long>(e.get<double>()));
    }
    m.sets.push_back(std::move(s));
  }

  const json& params = component(doc, "parameter", false, empty);
  for (std::size_t i = 0; i < params.size(); ++i) {
    const std::string path = "parameter[" + std::to_string(i) + "]";
    check_fields(params[i], path, {"name", "description", "domain", "data"});
    ParamDef p;
    p.name = get_string(params[i], path, "name", true);
    p.description = get_string(params[i], path, "description", false);
    p.domain = get_string(params[i], path, "domain", false);
    auto it = params[i].find("data");
    if (it == params[i].end()) {
      throw Error(Errc::kMissingRequiredComponent, path + ".data");
    }
    p.data = to_tree(*it, path + ".data");
    m.parameters.push_back(std::move(p));
  }

  const json& vars = component(doc, "variable", true, empty);
  for (std::size_t i = 0; i < vars.size(); ++i) {
    const std::string path = "variable[" + std::to_string(i) + "]";
    check_fields(vars[i], path, {"name", "description", "domain", "type"});
    VarDef v;
    v.name = get_string(vars[i], path, "name", true);
    v.description = get_string(vars[i], path, "description", false);
    v.domain = get_string(vars[i], path, "domain", false);
    const std::string type = lower(get_string(vars[i], path, "type", false));
    if (type.empty() || type == "continuous") {
      v.type = VarType::kContinuous;
    } else if (type == "integer") {
      v.type = VarType::kInteger;
    } else if (type == "binary") {
      v.type = VarType::kBinary;
    } else {
      throw Error(Errc::kWrongType, path + ".type '" + type + "'");
    }
    m.variables.push_back(std::move(v));
  }

  const json& objs = component(doc, "objective", true, empty);
  for (std::size_t i = 0; i < objs.size(); ++i) {
    const std::string path = "objective[" + std::to_string(i) + "]";
    check_fields(objs[i], path, {"name", "description", "sense", "function"});
    ObjectiveDef o;
    o.name = get_string(objs[i], path, "name", true);
    o.description = get_string(objs[i], path, "description", false);
    const std::string sense = lower(get_string(objs[i], path, "sense", true));
    if (sense == "min" || sense == "minimize") {
      o.sense = Sense::kMin;
    } else if (sense == "max" || sense == "maximize") {
      o.sense = Sense::kMax;
    } else {
      throw Error(Errc::kWrongType, path + ".sense '" + sense + "'");
    }
    o.function = get_string(objs[i], path, "function", true);
    m.objectives.push_back(std::move(o));
  }

  const json& cons = component(doc, "constraint", false, empty);
  for (std::size_t i = 0; i < cons.size(); ++i) {
    const std::string path = "constraint[" + std::to_string(i) + "]";
    check_fields(cons[i], path, {"name", "description", "domain", "function"});
    ConstraintDef c;
    c.name = get_string(cons[i], path, "name", true);
    c.description = get_string(cons[i], path, "description", false);
    c.domain = get_string(cons[i], path, "domain", false);
    c.function = get_string(cons[i], path, "function", true);
    m.constraints.push_back(std::move(c));
  }
  return m;
}

inline json parse_json_text(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    const std::size_t end = std::min<std::size_t>(e.byte, text.size());
    for (std::size_t i = 0; i + 1 < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw Error(Errc::kSyntax, "line " + std::to_string(line) + ", column " +
                                   std::to_string(col) + ": " + e.what());
  }
}

inline nlohmann::ordered_json sets_json(const StructuredModel& m) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& s : m.sets) {
    nlohmann::ordered_json o;
    o["name"] = s.name;
    o["description"] = s.description;
    o["data"] = s.data;
    arr.push_back(std::move(o));
  }
  return arr;
}

inline nlohmann::ordered_json params_json(const StructuredModel& m) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& p : m.parameters) {
    nlohmann::ordered_json o;
    o["name"] = p.name;
    o["description"] = p.description;
    o["domain"] = p.domain;
    o["data"] = from_tree(p.data);
    arr.push_back(std::move(o));
  }
  return arr;
}

inline nlohmann::ordered_json vars_json(const StructuredModel& m) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& v : m.variables) {
    nlohmann::ordered_json o;
    o["name"] = v.name;
    o["description"] = v.description;
    o["domain"] = v.domain;
    o["type"] = vartype_text(v.type);
    arr.push_back(std::move(o));
  }
  return arr;
}

inline nlohmann::ordered_json objectives_json(const StructuredModel& m) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& ob : m.objectives) {
    nlohmann::ordered_json o;
    o["name"] = ob.name;
    o["description"] = ob.description;
    o["sense"] = sense_text(ob.sense);
    o["function"] = ob.function;
    arr.push_back(std::move(o));
  }
  return arr;
}

inline nlohmann::ordered_json constraints_json(const StructuredModel& m) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& c : m.constraints) {
    nlohmann::ordered_json o;
    o["name"] = c.name;
    o["description"] = c.description;
    o["domain"] = c.domain;
    o["function"] = c.function;
    arr.push_back(std::move(o));
  }
  return arr;
}

}  // namespace model_io_detail

// Parses a JSON model document. Throws Error with kSyntax (with line and
// column), kUnknownField, kMissingRequiredComponent or kWrongType.
inline StructuredModel parse_model(std::string_view text) {
  return model_io_detail::from_json(model_io_detail::parse_json_text(text));
}

inline StructuredModel parse_model_json(const nlohmann::json& doc) {
  return model_io_detail::from_json(doc);
}

// Whole file as bytes. Throws kIo.
inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::kIo, "cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline StructuredModel parse_model_file(const std::string& path) {
  return parse_model(read_text_file(path));
}

inline std::string serialize_model(const StructuredModel& m, int indent = 2) {
  using namespace model_io_detail;
  nlohmann::ordered_json doc;
  doc["set"] = sets_json(m);
  doc["parameter"] = params_json(m);
  doc["variable"] = vars_json(m);
  doc["objective"] = objectives_json(m);
  doc["constraint"] = constraints_json(m);
  return doc.dump(indent);
}

// The three reasoning-layer fragments of a complete model.
struct ModelFragments {
  std::string sets_and_parameters;
  std::string variables;
  std::string objective_and_constraints;

  bool operator==(const ModelFragments&) const = default;
};

inline ModelFragments split_fragments(const StructuredModel& m) {
  using namespace model_io_detail;
  nlohmann::ordered_json sp, v, oc;
  sp["set"] = sets_json(m);
  sp["parameter"] = params_json(m);
  v["variable"] = vars_json(m);
  oc["objective"] = objectives_json(m);
  oc["constraint"] = constraints_json(m);
  return {sp.dump(), v.dump(), oc.dump()};
}

// Merges layer fragments (each a JSON object) back into a model. Later
// fragments may not redefine keys of earlier ones.
inline StructuredModel join_fragments(const std::vector<std::string>& parts) {
  nlohmann::json merged = nlohmann::json::object();
  for (const auto& part : parts) {
    nlohmann::json j = model_io_detail::parse_json_text(part);
    if (!j.is_object()) {
      throw Error(Errc::kWrongType, "model fragment must be an object");
    }
    for (auto& [key, value] : j.items()) {
      if (merged.contains(key)) {
        throw Error(Errc::kSyntax, "fragment redefines '" + key + "'");
      }
      merged[key] = value;
    }
  }
  return model_io_detail::from_json(merged);
}

}  // namespace orsearch

#endif  // ORSEARCH_MODEL_IO_HPP_
