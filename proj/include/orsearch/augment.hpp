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

// Process-supervision data factory: layer-aligned prefix segmentation,
// semantics-preserving (positive) and corrupting (negative) perturbations
// of structured models, and forward propagation of error labels.

#ifndef ORSEARCH_AUGMENT_HPP_
#define ORSEARCH_AUGMENT_HPP_

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "orsearch/error.hpp"
#include "orsearch/formula.hpp"
#include "orsearch/markdown.hpp"
#include "orsearch/model.hpp"
#include "orsearch/model_io.hpp"
#include "orsearch/rng.hpp"
#include "orsearch/search.hpp"

namespace orsearch {

enum class Label { kCorrect, kIncorrect };

constexpr std::string_view label_text(Label l) {
  return l == Label::kCorrect ? "correct" : "incorrect";
}

struct LabeledPrefix {
  std::string question;
  std::vector<std::string> prefix;
  Label label = Label::kCorrect;
  std::string provenance;
  std::string variant;
  std::uint64_t seed = 0;

  bool operator==(const LabeledPrefix&) const = default;
};

inline constexpr std::array<Layer, 3> kModelLayers{Layer::kSP, Layer::kV,
                                                   Layer::kOC};

// Cumulative prefixes Q+SP, Q+SP+V, Q+SP+V+OC. With `first_incorrect` set,
// that layer and every later one are Incorrect. An Incorrect path without an
// identified step yields only the full path.
inline std::vector<LabeledPrefix> segment_path(
    const std::string& question, const std::map<Layer, std::string>& fragments,
    Label label, std::optional<Layer> first_incorrect = std::nullopt,
    std::string provenance = "ground-truth") {
  std::vector<std::string> parts;
  for (Layer l : kModelLayers) {
    auto it = fragments.find(l);
    if (it == fragments.end()) {
      throw Error(Errc::kMissingLayer,
                  "no fragment for layer " + std::string(layer_name(l)));
    }
    parts.push_back(it->second);
  }
  if (label == Label::kCorrect && first_incorrect) {
    throw Error(Errc::kInvalidConfig,
                "a correct path cannot have an incorrect step");
  }
  if (first_incorrect == Layer::kQ) {
    throw Error(Errc::kInvalidConfig, "the question layer cannot be incorrect");
  }
  std::vector<LabeledPrefix> out;
  if (label == Label::kIncorrect && !first_incorrect) {
    out.push_back({question, parts, Label::kIncorrect, provenance, {}, 0});
    return out;
  }
  bool wrong = false;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (first_incorrect && kModelLayers[i] == *first_incorrect) wrong = true;
    out.push_back({question,
                   {parts.begin(), parts.begin() + static_cast<long>(i) + 1},
                   wrong ? Label::kIncorrect : Label::kCorrect,
                   provenance,
                   {},
                   0});
  }
  return out;
}

inline std::map<Layer, std::string> model_layers(const StructuredModel& m) {
  const ModelFragments f = split_fragments(m);
  return {{Layer::kSP, f.sets_and_parameters},
          {Layer::kV, f.variables},
          {Layer::kOC, f.objective_and_constraints}};
}

enum class PositiveKind { kRenameSumIndex, kFlipInequality };

enum class NegativeKind {
  kSetDataTamper,
  kParamColumnDrop,
  kParamReshuffle,
  kRelationFlipInPlace,
  kSubscriptSwap,
  kSumDomainSwap,
  kConstraintDelete,
  kFunctionEdit,
  kObjectiveReverse,
};

inline constexpr std::array<PositiveKind, 2> kPositiveKinds{
    PositiveKind::kRenameSumIndex, PositiveKind::kFlipInequality};

inline constexpr std::array<NegativeKind, 9> kNegativeKinds{
    NegativeKind::kSetDataTamper,       NegativeKind::kParamColumnDrop,
    NegativeKind::kParamReshuffle,      NegativeKind::kRelationFlipInPlace,
    NegativeKind::kSubscriptSwap,       NegativeKind::kSumDomainSwap,
    NegativeKind::kConstraintDelete,    NegativeKind::kFunctionEdit,
    NegativeKind::kObjectiveReverse};

constexpr std::string_view kind_name(PositiveKind k) {
  switch (k) {
    case PositiveKind::kRenameSumIndex: return "rename-sum-index";
    case PositiveKind::kFlipInequality: return "flip-inequality";
  }
  return "?";
}

constexpr std::string_view kind_name(NegativeKind k) {
  switch (k) {
    case NegativeKind::kSetDataTamper: return "set-data-tamper";
    case NegativeKind::kParamColumnDrop: return "param-column-drop";
    case NegativeKind::kParamReshuffle: return "param-reshuffle";
    case NegativeKind::kRelationFlipInPlace: return "relation-flip-in-place";
    case NegativeKind::kSubscriptSwap: return "subscript-swap";
    case NegativeKind::kSumDomainSwap: return "sum-domain-swap";
    case NegativeKind::kConstraintDelete: return "constraint-delete";
    case NegativeKind::kFunctionEdit: return "function-edit";
    case NegativeKind::kObjectiveReverse: return "objective-reverse";
  }
  return "?";
}

// Layer a negative perturbation corrupts.
constexpr Layer corrupted_layer(NegativeKind k) {
  switch (k) {
    case NegativeKind::kSetDataTamper:
    case NegativeKind::kParamColumnDrop:
    case NegativeKind::kParamReshuffle: return Layer::kSP;
    default: return Layer::kOC;
  }
}

inline std::optional<PositiveKind> parse_positive_kind(std::string_view s) {
  for (auto k : kPositiveKinds) {
    if (kind_name(k) == s) return k;
  }
  return std::nullopt;
}

inline std::optional<NegativeKind> parse_negative_kind(std::string_view s) {
  for (auto k : kNegativeKinds) {
    if (kind_name(k) == s) return k;
  }
  return std::nullopt;
}

namespace augment_detail {

// Parsed objective/constraint functions of a model being edited.
struct Slot {
  std::string* function;
  std::string* domain;  // null for objectives
  std::vector<Formula> segments;
};

struct Site {
  std::size_t slot;
  Formula* node;
};

inline std::vector<Slot> slots(StructuredModel& m, bool objectives,
                               bool constraints) {
  std::vector<Slot> out;
  if (objectives) {
    for (auto& o : m.objectives) {
      out.push_back({&o.function, nullptr, parse_formula(o.function)});
    }
  }
  if (constraints) {
    for (auto& c : m.constraints) {
      out.push_back({&c.function, &c.domain, parse_formula(c.function)});
    }
  }
  return out;
}

template <typename Pred>
std::vector<Site> sites(std::vector<Slot>& slots, Pred&& pred) {
  std::vector<Site> out;
  for (std::size_t s = 0; s < slots.size(); ++s) {
    for (auto& seg : slots[s].segments) {
      for_each_node(seg, [&](Formula& f) {
        if (pred(f)) out.push_back({s, &f});
      });
    }
  }
  return out;
}

inline void write_back(Slot& slot) {
  *slot.function = print_formulas(slot.segments);
}

[[noreturn]] inline void no_site(std::string_view kind) {
  throw Error(Errc::kNoApplicableSite,
              "no applicable site for " + std::string(kind));
}

// Renames free occurrences of `from` below `f`, stopping at sums that
// rebind it.
inline void rename_index(Formula& f, const std::string& from,
                         const std::string& to) {
  if (f.kind == NodeKind::kRef) {
    for (auto& s : f.subscripts) {
      if (s == from) s = to;
    }
    return;
  }
  if (f.kind == NodeKind::kSum) {
    for (const auto& b : f.bindings.bindings) {
      if (b.index == from) return;
    }
  }
  for (auto& a : f.args) rename_index(a, from, to);
}

inline std::set<std::string> identifiers(const StructuredModel& m) {
  std::set<std::string> ids;
  for (const auto& s : m.sets) ids.insert(s.name);
  for (const auto& p : m.parameters) ids.insert(p.name);
  for (const auto& v : m.variables) ids.insert(v.name);
  auto add_domain = [&](const std::string& text) {
    for (const auto& b : parse_domain(text).bindings) {
      ids.insert(b.index);
      ids.insert(b.set_name);
    }
  };
  auto add_formula = [&](const std::string& text) {
    for (const auto& seg : parse_formula(text)) {
      for_each_node(seg, [&](const Formula& f) {
        if (f.kind == NodeKind::kRef) {
          ids.insert(f.name);
          ids.insert(f.subscripts.begin(), f.subscripts.end());
        }
        for (const auto& b : f.bindings.bindings) ids.insert(b.index);
      });
    }
  };
  for (const auto& p : m.parameters) add_domain(p.domain);
  for (const auto& v : m.variables) add_domain(v.domain);
  for (const auto& o : m.objectives) add_formula(o.function);
  for (const auto& c : m.constraints) {
    add_domain(c.domain);
    add_formula(c.function);
  }
  return ids;
}

inline std::string fresh_index(const std::set<std::string>& taken) {
  static constexpr std::array<std::string_view, 12> kNames{
      "j", "k", "l", "m", "n", "p", "q", "r", "t", "u", "v", "w"};
  for (auto n : kNames) {
    if (!taken.count(std::string(n))) return std::string(n);
  }
  for (int i = 1;; ++i) {
    std::string n = "idx" + std::to_string(i);
    if (!taken.count(n)) return n;
  }
}

inline std::size_t depth_of(const NumTree& t) {
  std::size_t d = 0;
  for (const NumTree* n = &t; n->is_list && !n->items.empty();
       n = &n->items.front()) {
    ++d;
  }
  return d;
}

inline std::size_t extent_at(const NumTree& t, std::size_t dim) {
  const NumTree* n = &t;
  for (std::size_t i = 0; i < dim; ++i) n = &n->items.front();
  return n->items.size();
}

inline void drop_column(NumTree& t, std::size_t dim, std::size_t column) {
  if (!t.is_list) return;
  if (dim == 0) {
    if (column < t.items.size()) {
      t.items.erase(t.items.begin() + static_cast<long>(column));
    }
    return;
  }
  for (auto& item : t.items) drop_column(item, dim - 1, column);
}

inline void leaves(NumTree& t, std::vector<double*>& out) {
  if (!t.is_list) {
    out.push_back(&t.value);
    return;
  }
  for (auto& item : t.items) leaves(item, out);
}

}  // namespace augment_detail

// Rewrites one site of `model` in a way that keeps the optimum unchanged.
inline StructuredModel perturb_positive(const StructuredModel& model,
                                        PositiveKind kind, Rng& rng) {
  using namespace augment_detail;
  StructuredModel out = model;
  switch (kind) {
    case PositiveKind::kRenameSumIndex: {
      auto sl = slots(out, true, true);
      auto st = sites(sl, [](const Formula& f) {
        return f.kind == NodeKind::kSum && !f.bindings.empty();
      });
      if (st.empty()) no_site(kind_name(kind));
      const Site site = st[rng.uniform_index(st.size())];
      Formula& sum = *site.node;
      auto& binding =
          sum.bindings.bindings[rng.uniform_index(sum.bindings.size())];
      const std::string from = binding.index;
      const std::string to = fresh_index(identifiers(model));
      binding.index = to;
      rename_index(sum.args[0], from, to);
      write_back(sl[site.slot]);
      break;
    }
    case PositiveKind::kFlipInequality: {
      auto sl = slots(out, false, true);
      std::vector<Site> st;
      for (std::size_t s = 0; s < sl.size(); ++s) {
        for (auto& seg : sl[s].segments) {
          if (seg.is_comparison()) st.push_back({s, &seg});
        }
      }
      if (st.empty()) no_site(kind_name(kind));
      const Site site = st[rng.uniform_index(st.size())];
      Formula& chain = *site.node;
      std::reverse(chain.args.begin(), chain.args.end());
      std::reverse(chain.relations.begin(), chain.relations.end());
      for (auto& r : chain.relations) r = reversed(r);
      write_back(sl[site.slot]);
      break;
    }
  }
  return out;
}

// Applies exactly one corruption of the requested kind.
inline StructuredModel perturb_negative(const StructuredModel& model,
                                        NegativeKind kind, Rng& rng) {
  using namespace augment_detail;
  StructuredModel out = model;
  switch (kind) {
    case NegativeKind::kSetDataTamper: {
      if (out.sets.empty()) no_site(kind_name(kind));
      SetDef& s = out.sets[rng.uniform_index(out.sets.size())];
      const bool remove = s.data.size() >= 2 && rng.bernoulli(0.5);
      if (remove) {
        s.data.pop_back();
      } else {
        s.data.push_back(static_cast<long>(s.data.size()) + 1);
      }
      break;
    }
    case NegativeKind::kParamColumnDrop: {
      std::vector<std::pair<std::size_t, std::size_t>> st;  // (param, dim)
      for (std::size_t p = 0; p < out.parameters.size(); ++p) {
        const NumTree& t = out.parameters[p].data;
        for (std::size_t d = 0; d < depth_of(t); ++d) {
          if (extent_at(t, d) >= 2) st.emplace_back(p, d);
        }
      }
      if (st.empty()) no_site(kind_name(kind));
      const auto [p, d] = st[rng.uniform_index(st.size())];
      NumTree& t = out.parameters[p].data;
      drop_column(t, d, rng.uniform_index(extent_at(t, d)));
      break;
    }
    case NegativeKind::kParamReshuffle: {
      std::vector<std::size_t> st;
      for (std::size_t p = 0; p < out.parameters.size(); ++p) {
        std::vector<double*> vals;
        leaves(out.parameters[p].data, vals);
        for (auto* v : vals) {
          if (*v != *vals.front()) {
            st.push_back(p);
            break;
          }
        }
      }
      if (st.empty()) no_site(kind_name(kind));
      std::vector<double*> vals;
      leaves(out.parameters[st[rng.uniform_index(st.size())]].data, vals);
      std::vector<double> before;
      for (auto* v : vals) before.push_back(*v);
      std::vector<double> after = before;
      rng.shuffle(after);
      if (after == before) {
        std::rotate(after.begin(), after.begin() + 1, after.end());
      }
      for (std::size_t i = 0; i < vals.size(); ++i) *vals[i] = after[i];
      break;
    }
    case NegativeKind::kRelationFlipInPlace: {
      auto sl = slots(out, false, true);
      std::vector<std::pair<Site, std::size_t>> st;
      for (std::size_t s = 0; s < sl.size(); ++s) {
        for (auto& seg : sl[s].segments) {
          for (std::size_t k = 0; k < seg.relations.size(); ++k) {
            if (seg.relations[k] != Relation::kEQ) st.push_back({{s, &seg}, k});
          }
        }
      }
      if (st.empty()) no_site(kind_name(kind));
      const auto [site, k] = st[rng.uniform_index(st.size())];
      site.node->relations[k] = reversed(site.node->relations[k]);
      write_back(sl[site.slot]);
      break;
    }
    case NegativeKind::kSubscriptSwap: {
      auto sl = slots(out, false, true);
      auto st = sites(sl, [](const Formula& f) {
        if (f.kind != NodeKind::kRef) return false;
        for (const auto& s : f.subscripts) {
          if (s != f.subscripts.front()) return true;
        }
        return false;
      });
      if (st.empty()) no_site(kind_name(kind));
      const Site site = st[rng.uniform_index(st.size())];
      auto& subs = site.node->subscripts;
      std::vector<std::pair<std::size_t, std::size_t>> pairs;
      for (std::size_t a = 0; a < subs.size(); ++a) {
        for (std::size_t b = a + 1; b < subs.size(); ++b) {
          if (subs[a] != subs[b]) pairs.emplace_back(a, b);
        }
      }
      const auto [a, b] = pairs[rng.uniform_index(pairs.size())];
      std::swap(subs[a], subs[b]);
      write_back(sl[site.slot]);
      break;
    }
    case NegativeKind::kSumDomainSwap: {
      if (out.sets.size() < 2) no_site(kind_name(kind));
      auto sl = slots(out, false, true);
      auto st = sites(sl, [](const Formula& f) {
        return f.kind == NodeKind::kSum && !f.bindings.empty();
      });
      if (st.empty()) no_site(kind_name(kind));
      const Site site = st[rng.uniform_index(st.size())];
      auto& binding = site.node->bindings.bindings[rng.uniform_index(
          site.node->bindings.size())];
      std::vector<std::string> others;
      for (const auto& s : out.sets) {
        if (s.name != binding.set_name) others.push_back(s.name);
      }
      binding.set_name = others[rng.uniform_index(others.size())];
      write_back(sl[site.slot]);
      break;
    }
    case NegativeKind::kConstraintDelete: {
      if (out.constraints.empty()) no_site(kind_name(kind));
      out.constraints.erase(out.constraints.begin() +
                            static_cast<long>(
                                rng.uniform_index(out.constraints.size())));
      break;
    }
    case NegativeKind::kFunctionEdit: {
      auto sl = slots(out, true, true);
      auto st = sites(sl, [](const Formula& f) {
        return f.kind == NodeKind::kNumber || f.kind == NodeKind::kRef;
      });
      if (st.empty()) no_site(kind_name(kind));
      const Site site = st[rng.uniform_index(st.size())];
      Formula& f = *site.node;
      if (f.kind == NodeKind::kNumber) {
        f.value += 1.0;
      } else {
        f = Formula::binary(NodeKind::kMul, Formula::number(2.0), f);
      }
      write_back(sl[site.slot]);
      break;
    }
    case NegativeKind::kObjectiveReverse: {
      if (out.objectives.empty()) no_site(kind_name(kind));
      for (auto& o : out.objectives) {
        o.sense = o.sense == Sense::kMax ? Sense::kMin : Sense::kMax;
      }
      break;
    }
  }
  return out;
}

struct AugmentPlan {
  std::map<PositiveKind, int> positive;
  std::map<NegativeKind, int> negative;
};

// Records for a model text that fails to parse or validate, supplied from
// an external generator.
inline LabeledPrefix malformed_record(const std::string& question,
                                      const std::string& text,
                                      std::uint64_t seed = 0) {
  return {question, {text}, Label::kIncorrect, "incorrect-format",
          "negative", seed};
}

// Originals and positive variants yield three Correct prefixes each;
// negative variants yield the Incorrect prefixes from the corrupted layer
// onward. Kinds without a site in a given model are skipped for that model.
inline std::vector<LabeledPrefix> build_prm_dataset(
    const std::vector<StructuredModel>& models, const AugmentPlan& plan,
    std::uint64_t rng_seed) {
  std::vector<LabeledPrefix> records;
  std::map<std::string, bool> applied;
  auto emit = [&](std::vector<LabeledPrefix> batch, std::string_view variant,
                  std::uint64_t seed, bool only_incorrect) {
    for (auto& r : batch) {
      if (only_incorrect && r.label == Label::kCorrect) continue;
      r.variant = variant;
      r.seed = seed;
      records.push_back(std::move(r));
    }
  };

  for (std::size_t mi = 0; mi < models.size(); ++mi) {
    const StructuredModel& model = models[mi];
    const std::string question = render_markdown(model);
    const std::uint64_t model_seed =
        mix_seed(rng_seed, "model:" + std::to_string(mi));
    emit(segment_path(question, model_layers(model), Label::kCorrect),
         "original", model_seed, false);

    for (const auto& [kind, count] : plan.positive) {
      if (count > 0) applied.try_emplace(std::string(kind_name(kind)), false);
      for (int rep = 0; rep < count; ++rep) {
        const std::uint64_t seed = mix_seed(
            model_seed, std::string(kind_name(kind)) + "#" + std::to_string(rep));
        Rng rng(seed);
        StructuredModel variant;
        try {
          variant = perturb_positive(model, kind, rng);
        } catch (const Error& e) {
          if (e.code() == Errc::kNoApplicableSite) break;
          throw;
        }
        applied[std::string(kind_name(kind))] = true;
        emit(segment_path(question, model_layers(variant), Label::kCorrect,
                          std::nullopt,
                          "positive:" + std::string(kind_name(kind))),
             "positive", seed, false);
      }
    }

    for (const auto& [kind, count] : plan.negative) {
      if (count > 0) applied.try_emplace(std::string(kind_name(kind)), false);
      for (int rep = 0; rep < count; ++rep) {
        const std::uint64_t seed = mix_seed(
            model_seed, std::string(kind_name(kind)) + "#" + std::to_string(rep));
        Rng rng(seed);
        StructuredModel variant;
        try {
          variant = perturb_negative(model, kind, rng);
        } catch (const Error& e) {
          if (e.code() == Errc::kNoApplicableSite) break;
          throw;
        }
        applied[std::string(kind_name(kind))] = true;
        emit(segment_path(question, model_layers(variant), Label::kIncorrect,
                          corrupted_layer(kind),
                          "negative:" + std::string(kind_name(kind))),
             "negative", seed, true);
      }
    }
  }

  if (!models.empty()) {
    for (const auto& [name, ok] : applied) {
      if (!ok) {
        throw Error(Errc::kPlanInfeasible,
                    "no model offers a site for " + name);
      }
    }
  }
  return records;
}

inline nlohmann::ordered_json record_json(const LabeledPrefix& r) {
  nlohmann::ordered_json j;
  j["question"] = r.question;
  j["prefix"] = r.prefix;
  j["label"] = label_text(r.label);
  j["provenance"] = r.provenance;
  j["variant"] = r.variant;
  j["seed"] = r.seed;
  return j;
}

// One JSON object per line.
inline std::string to_jsonl(const std::vector<LabeledPrefix>& records) {
  std::string out;
  for (const auto& r : records) {
    out += record_json(r).dump();
    out += '\n';
  }
  return out;
}

}  // namespace orsearch

#endif  // ORSEARCH_AUGMENT_HPP_
