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

#ifndef ORSEARCH_MARKDOWN_HPP_
#define ORSEARCH_MARKDOWN_HPP_

#include <string>

#include "orsearch/formula.hpp"
#include "orsearch/model.hpp"

namespace orsearch {

namespace markdown_detail {

inline void values_into(const NumTree& t, std::string& out) {
  if (!t.is_list) {
    out += format_number(t.value);
    return;
  }
  out += '[';
  for (std::size_t i = 0; i < t.items.size(); ++i) {
    if (i) out += ", ";
    values_into(t.items[i], out);
  }
  out += ']';
}

}  // namespace markdown_detail

// Markdown description of the instance data (sets and parameters), in
// declaration order. Sections with no entries are omitted.
inline std::string render_markdown(const StructuredModel& model) {
  std::string out;
  if (!model.sets.empty()) {
    out += "### Sets\n\n";
    for (const auto& s : model.sets) {
      out += "- **" + s.name + "** (" + std::to_string(s.size()) +
             (s.size() == 1 ? " element" : " elements") + ")";
      if (!s.description.empty()) out += ": " + s.description;
      out += '\n';
    }
  }
  if (!model.parameters.empty()) {
    if (!out.empty()) out += '\n';
    out += "### Parameters\n\n";
    for (const auto& p : model.parameters) {
      out += "- **" + p.name + "**";
      if (!p.domain.empty()) out += " over `" + p.domain + "`";
      if (!p.description.empty()) out += ": " + p.description;
      out += "\n  - ";
      out += p.domain.empty() ? "value: " : "values: ";
      markdown_detail::values_into(p.data, out);
      out += '\n';
    }
  }
  return out;
}

}  // namespace orsearch

#endif  // ORSEARCH_MARKDOWN_HPP_
