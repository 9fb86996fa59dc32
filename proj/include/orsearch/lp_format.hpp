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

#ifndef ORSEARCH_LP_FORMAT_HPP_
#define ORSEARCH_LP_FORMAT_HPP_

#include <string>

#include "orsearch/formula.hpp"
#include "orsearch/instantiate.hpp"

namespace orsearch {

namespace lp_detail {

inline void term(std::string& out, bool first, double coef,
                 const std::string& name) {
  const bool negative = coef < 0.0;
  const double mag = negative ? -coef : coef;
  if (first) {
    if (negative) out += "- ";
  } else {
    out += negative ? " - " : " + ";
  }
  if (mag != 1.0) out += format_number(mag) + " ";
  out += name;
}

inline std::string expr(const LinearExpr& e, const ConcreteModel& m,
                        bool with_constant) {
  std::string out;
  bool first = true;
  for (const auto& [col, c] : e.coefficients) {
    term(out, first, c, m.variables[col].lp_name());
    first = false;
  }
  if (first && !m.variables.empty()) {
    out += "0 " + m.variables.front().lp_name();
    first = false;
  }
  if (with_constant && e.constant != 0.0) {
    out += e.constant < 0.0 ? " - " : " + ";
    out += format_number(e.constant < 0.0 ? -e.constant : e.constant);
  }
  return out;
}

}  // namespace lp_detail

// CPLEX-style LP text. Deterministic; '\n' line endings.
inline std::string emit_lp(const ConcreteModel& m) {
  std::string out;
  out += "\\ objective: " + m.objective_name + "\n";
  out += m.sense == Sense::kMax ? "Maximize\n" : "Minimize\n";
  out += " obj: " + lp_detail::expr(m.objective, m, true) + "\n";
  out += "Subject To\n";
  for (const auto& c : m.constraints) {
    out += " " + c.name + ": " + lp_detail::expr(c.lhs, m, false) + " " +
           std::string(relation_text(c.relation)) + " " +
           format_number(c.rhs) + "\n";
  }
  out += "Bounds\n";
  for (const auto& v : m.variables) {
    if (v.type == VarType::kBinary) {
      out += " 0 <= " + v.lp_name() + " <= 1\n";
    } else {
      out += " " + v.lp_name() + " >= 0\n";
    }
  }
  bool header = false;
  for (const auto& v : m.variables) {
    if (v.type != VarType::kInteger) continue;
    if (!header) out += "Generals\n";
    header = true;
    out += " " + v.lp_name() + "\n";
  }
  header = false;
  for (const auto& v : m.variables) {
    if (v.type != VarType::kBinary) continue;
    if (!header) out += "Binaries\n";
    header = true;
    out += " " + v.lp_name() + "\n";
  }
  out += "End\n";
  return out;
}

}  // namespace orsearch

#endif  // ORSEARCH_LP_FORMAT_HPP_
