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

// Expansion of a StructuredModel into a concrete linear / mixed-integer
// program, plus a direct recursive interpreter used as an independent check
// of the expansion.

#ifndef ORSEARCH_INSTANTIATE_HPP_
#define ORSEARCH_INSTANTIATE_HPP_

#include <cmath>
#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "orsearch/error.hpp"
#include "orsearch/formula.hpp"
#include "orsearch/model.hpp"
#include "orsearch/validate.hpp"

namespace orsearch {

struct VarInstance {
  std::string def_name;
  std::vector<long> index;
  VarType type = VarType::kContinuous;
  std::size_t column = 0;

  // Flattened name, e.g. x(1,2) -> "x_1_2".
  std::string lp_name() const {
    std::string out = def_name;
    for (long i : index) out += "_" + std::to_string(i);
    return out;
  }
};

// Affine expression in sparse canonical form: no stored zero coefficient.
struct LinearExpr {
  std::map<std::size_t, double> coefficients;
  double constant = 0.0;

  bool has_variables() const { return !coefficients.empty(); }

  void add_term(std::size_t column, double coef) {
    auto [it, fresh] = coefficients.emplace(column, coef);
    if (!fresh) it->second += coef;
    if (it->second == 0.0) coefficients.erase(it);
  }

  void add(const LinearExpr& other, double factor = 1.0) {
    for (const auto& [col, c] : other.coefficients) add_term(col, factor * c);
    constant += factor * other.constant;
  }

  void scale(double factor) {
    if (factor == 0.0) {
      coefficients.clear();
      constant = 0.0;
      return;
    }
    for (auto& [col, c] : coefficients) c *= factor;
    constant *= factor;
  }

  double evaluate(std::span<const double> x) const {
    double total = constant;
    for (const auto& [col, c] : coefficients) total += c * x[col];
    return total;
  }
};

struct ConcreteConstraint {
  std::string name;
  LinearExpr lhs;  // constant is always 0; constants live in rhs
  Relation relation = Relation::kLE;  // kLE, kGE or kEQ
  double rhs = 0.0;
};

struct ConcreteModel {
  std::vector<VarInstance> variables;
  Sense sense = Sense::kMin;
  std::string objective_name;
  LinearExpr objective;
  std::vector<ConcreteConstraint> constraints;
  std::vector<std::string> warnings;
};

// Calls fn for every index tuple of the cartesian product of 1..sizes[k], in
// lexicographic order. An empty `sizes` yields the single empty tuple.
template <typename Fn>
void for_each_tuple(const std::vector<std::size_t>& sizes, Fn&& fn) {
  for (std::size_t s : sizes) {
    if (s == 0) return;
  }
  std::vector<long> tuple(sizes.size(), 1);
  for (;;) {
    fn(static_cast<const std::vector<long>&>(tuple));
    std::size_t k = sizes.size();
    while (k > 0) {
      --k;
      if (static_cast<std::size_t>(tuple[k]) < sizes[k]) {
        ++tuple[k];
        break;
      }
      tuple[k] = 1;
      if (k == 0) return;
    }
    if (sizes.empty()) return;
  }
}

inline std::string tuple_suffix(const std::vector<long>& tuple) {
  std::string out;
  for (long i : tuple) out += "_" + std::to_string(i);
  return out;
}

namespace instantiate_detail {

struct IndexedSymbol {
  std::vector<std::string> sets;
  std::vector<std::size_t> sizes;
};

// Resolution tables shared by the expander.
class Symbols {
 public:
  explicit Symbols(const StructuredModel& m) : model_(m) {
    for (const auto& s : m.sets) set_sizes_[s.name] = s.size();
    for (const auto& p : m.parameters) params_[p.name] = {&p, indexed(p.domain)};
    std::size_t column = 0;
    for (const auto& v : m.variables) {
      IndexedSymbol sym = indexed(v.domain);
      vars_[v.name] = {&v, sym, column};
      std::size_t count = 1;
      for (std::size_t s : sym.sizes) count *= s;
      column += count;
    }
    column_count_ = column;
  }

  std::size_t set_size(const std::string& name) const {
    auto it = set_sizes_.find(name);
    if (it == set_sizes_.end()) {
      throw Error(Errc::kUnknownSymbol, "unknown set '" + name + "'");
    }
    return it->second;
  }

  struct Param {
    const ParamDef* def;
    IndexedSymbol shape;
  };
  struct Var {
    const VarDef* def;
    IndexedSymbol shape;
    std::size_t base;
  };

  const Param* param(const std::string& n) const {
    auto it = params_.find(n);
    return it == params_.end() ? nullptr : &it->second;
  }
  const Var* var(const std::string& n) const {
    auto it = vars_.find(n);
    return it == vars_.end() ? nullptr : &it->second;
  }
  std::size_t column_count() const { return column_count_; }
  const StructuredModel& model() const { return model_; }

  IndexedSymbol indexed(const std::string& domain) const {
    IndexedSymbol out;
    for (const auto& b : parse_domain(domain).bindings) {
      out.sets.push_back(b.set_name);
      out.sizes.push_back(set_size(b.set_name));
    }
    return out;
  }

 private:
  const StructuredModel& model_;
  std::map<std::string, std::size_t> set_sizes_;
  std::map<std::string, Param> params_;
  std::map<std::string, Var> vars_;
  std::size_t column_count_ = 0;
};

using Env = std::vector<std::pair<std::string, long>>;

inline long lookup_index(const Env& env, const std::string& name,
                         const std::string& where) {
  for (auto it = env.rbegin(); it != env.rend(); ++it) {
    if (it->first == name) return it->second;
  }
  throw Error(Errc::kUnboundIndex,
              "index '" + name + "' is not bound in " + where);
}

inline std::string env_text(const Env& env) {
  if (env.empty()) return "()";
  std::string out = "(";
  for (std::size_t i = 0; i < env.size(); ++i) {
    if (i) out += ",";
    out += env[i].first + "=" + std::to_string(env[i].second);
  }
  return out + ")";
}

inline std::vector<long> resolve_subscripts(const Formula& ref,
                                            const IndexedSymbol& shape,
                                            const Env& env,
                                            const std::string& where) {
  if (ref.subscripts.size() != shape.sizes.size()) {
    throw Error(Errc::kSubscriptArityMismatch,
                "'" + ref.name + "' takes " +
                    std::to_string(shape.sizes.size()) + " subscripts, got " +
                    std::to_string(ref.subscripts.size()) + " in " + where);
  }
  std::vector<long> tuple;
  tuple.reserve(ref.subscripts.size());
  for (std::size_t k = 0; k < ref.subscripts.size(); ++k) {
    const long v = lookup_index(env, ref.subscripts[k], where);
    if (v < 1 || static_cast<std::size_t>(v) > shape.sizes[k]) {
      throw Error(Errc::kIndexOutOfRange,
                  "'" + ref.name + "' subscript " + ref.subscripts[k] + "=" +
                      std::to_string(v) + " outside set " + shape.sets[k] +
                      " in " + where);
    }
    tuple.push_back(v);
  }
  return tuple;
}

inline std::size_t column_of(const Symbols::Var& v,
                             const std::vector<long>& tuple) {
  std::size_t offset = 0;
  for (std::size_t k = 0; k < tuple.size(); ++k) {
    offset = offset * v.shape.sizes[k] + static_cast<std::size_t>(tuple[k] - 1);
  }
  return v.base + offset;
}

class Expander {
 public:
  Expander(const Symbols& symbols, std::string where)
      : symbols_(symbols), where_(std::move(where)) {}

  Env env;

  LinearExpr eval(const Formula& f) {
    switch (f.kind) {
      case NodeKind::kNumber: {
        LinearExpr e;
        e.constant = f.value;
        return e;
      }
      case NodeKind::kRef: return ref(f);
      case NodeKind::kAdd:
      case NodeKind::kSub: {
        LinearExpr a = eval(f.lhs());
        a.add(eval(f.rhs()), f.kind == NodeKind::kAdd ? 1.0 : -1.0);
        return a;
      }
      case NodeKind::kNeg: {
        LinearExpr a = eval(f.args[0]);
        a.scale(-1.0);
        return a;
      }
      case NodeKind::kMul: {
        LinearExpr a = eval(f.lhs());
        LinearExpr b = eval(f.rhs());
        if (a.has_variables() && b.has_variables()) {
          throw Error(Errc::kNonlinearTerm,
                      "product of two variable terms '" + print_formula(f) +
                          "' in " + where());
        }
        if (a.has_variables()) {
          a.scale(b.constant);
          return a;
        }
        b.scale(a.constant);
        return b;
      }
      case NodeKind::kDiv: {
        LinearExpr a = eval(f.lhs());
        LinearExpr b = eval(f.rhs());
        if (b.has_variables()) {
          throw Error(Errc::kNonlinearTerm,
                      "division by a variable term '" + print_formula(f) +
                          "' in " + where());
        }
        if (b.constant == 0.0) {
          throw Error(Errc::kDivisionByZero,
                      "'" + print_formula(f.rhs()) + "' is zero in " + where());
        }
        a.scale(1.0 / b.constant);
        return a;
      }
      case NodeKind::kSum: {
        std::vector<std::size_t> sizes;
        for (const auto& b : f.bindings.bindings) {
          sizes.push_back(symbols_.set_size(b.set_name));
        }
        LinearExpr total;
        const std::size_t mark = env.size();
        for_each_tuple(sizes, [&](const std::vector<long>& t) {
          env.resize(mark);
          for (std::size_t k = 0; k < t.size(); ++k) {
            env.emplace_back(f.bindings.bindings[k].index, t[k]);
          }
          total.add(eval(f.body()));
        });
        env.resize(mark);
        return total;
      }
      case NodeKind::kCompareChain:
        throw Error(Errc::kSyntax, "comparison inside an expression");
    }
    return {};
  }

 private:
  std::string where() const { return where_ + env_text(env); }

  LinearExpr ref(const Formula& f) {
    LinearExpr e;
    if (const auto* p = symbols_.param(f.name)) {
      e.constant = p->def->data.at(resolve_subscripts(f, p->shape, env, where()));
      return e;
    }
    if (const auto* v = symbols_.var(f.name)) {
      e.add_term(column_of(*v, resolve_subscripts(f, v->shape, env, where())),
                 1.0);
      return e;
    }
    throw Error(Errc::kUnknownSymbol,
                "'" + f.name + "' is neither a parameter nor a variable in " +
                    where());
  }

  const Symbols& symbols_;
  std::string where_;
};

inline void require_valid(const StructuredModel& model) {
  const auto violations = validate(model);
  if (!violations.empty()) {
    throw Error(Errc::kInvalidModel, violations.front().to_string());
  }
}

inline Formula objective_formula(const ObjectiveDef& obj) {
  auto segments = parse_formula(obj.function);
  if (segments.size() != 1 || segments[0].is_comparison()) {
    throw Error(Errc::kSyntax,
                "objective '" + obj.name + "' must be a single expression");
  }
  return std::move(segments[0]);
}

inline void check_free(const Formula& f, const DomainSpec& domain,
                       const std::string& where) {
  for (const auto& idx : free_indices(f)) {
    bool bound = false;
    for (const auto& b : domain.bindings) bound = bound || b.index == idx;
    if (!bound) {
      throw Error(Errc::kUnboundIndex,
                  "index '" + idx + "' is not bound in " + where);
    }
  }
}

}  // namespace instantiate_detail

// Expands the model: one column per variable index tuple, one row per
// constraint index tuple, comma segment and chain link. Strict relations
// become non-strict (with a warning).
inline ConcreteModel expand(const StructuredModel& model) {
  using namespace instantiate_detail;
  require_valid(model);
  Symbols symbols(model);
  ConcreteModel out;

  for (const auto& v : model.variables) {
    const auto* var = symbols.var(v.name);
    for_each_tuple(var->shape.sizes, [&](const std::vector<long>& t) {
      out.variables.push_back({v.name, t, v.type, out.variables.size()});
    });
  }

  const ObjectiveDef& obj = model.objectives.front();
  out.sense = obj.sense;
  out.objective_name = obj.name;
  {
    const Formula f = objective_formula(obj);
    check_free(f, {}, "objective " + obj.name);
    Expander ex(symbols, "objective " + obj.name);
    out.objective = ex.eval(f);
  }

  for (const auto& c : model.constraints) {
    const DomainSpec domain = parse_domain(c.domain);
    const auto segments = parse_formula(c.function);
    std::vector<std::size_t> sizes;
    for (const auto& b : domain.bindings) {
      sizes.push_back(symbols.set_size(b.set_name));
    }
    for (const auto& seg : segments) {
      if (!seg.is_comparison()) {
        throw Error(Errc::kMissingRelation,
                    "constraint '" + c.name + "' segment '" +
                        print_formula(seg) + "' has no relation");
      }
      check_free(seg, domain, "constraint " + c.name);
    }
    for_each_tuple(sizes, [&](const std::vector<long>& t) {
      Expander ex(symbols, "constraint " + c.name);
      for (std::size_t k = 0; k < t.size(); ++k) {
        ex.env.emplace_back(domain.bindings[k].index, t[k]);
      }
      for (std::size_t s = 0; s < segments.size(); ++s) {
        const Formula& chain = segments[s];
        std::vector<LinearExpr> operands;
        for (const auto& op : chain.args) operands.push_back(ex.eval(op));
        for (std::size_t l = 0; l < chain.relations.size(); ++l) {
          ConcreteConstraint row;
          row.name = c.name + tuple_suffix(t) + "_s" + std::to_string(s + 1) +
                     "_c" + std::to_string(l + 1);
          LinearExpr diff = operands[l];
          diff.add(operands[l + 1], -1.0);
          row.rhs = -diff.constant;
          diff.constant = 0.0;
          row.lhs = std::move(diff);
          Relation rel = chain.relations[l];
          if (rel == Relation::kLT || rel == Relation::kGT) {
            const Relation relaxed =
                rel == Relation::kLT ? Relation::kLE : Relation::kGE;
            out.warnings.push_back(row.name + ": strict '" +
                                   std::string(relation_text(rel)) +
                                   "' treated as '" +
                                   std::string(relation_text(relaxed)) + "'");
            rel = relaxed;
          }
          row.relation = rel;
          out.constraints.push_back(std::move(row));
        }
      }
    });
  }
  return out;
}

// Key of a variable instance in an assignment: definition name + tuple.
struct VarKey {
  std::string name;
  std::vector<long> index;

  auto operator<=>(const VarKey&) const = default;
  bool operator==(const VarKey&) const = default;
};

using Assignment = std::map<VarKey, double>;

inline Assignment to_assignment(const ConcreteModel& model,
                                std::span<const double> x) {
  Assignment out;
  for (const auto& v : model.variables) {
    out[{v.def_name, v.index}] = x[v.column];
  }
  return out;
}

struct ConstraintCheck {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  Relation relation = Relation::kLE;
  bool satisfied = false;
};

struct NaiveEvaluation {
  double objective_value = 0.0;
  std::vector<ConstraintCheck> constraints;
};

inline bool relation_holds(double lhs, Relation rel, double rhs, double tol) {
  switch (rel) {
    case Relation::kLE:
    case Relation::kLT: return lhs <= rhs + tol;
    case Relation::kGE:
    case Relation::kGT: return lhs >= rhs - tol;
    case Relation::kEQ: return std::fabs(lhs - rhs) <= tol;
  }
  return false;
}

namespace naive_detail {

using Env = std::vector<std::pair<std::string, long>>;

class Interpreter {
 public:
  Interpreter(const StructuredModel& m, const Assignment& a)
      : model_(m), assignment_(a) {}

  Env env;

  double eval(const Formula& f) {
    switch (f.kind) {
      case NodeKind::kNumber: return f.value;
      case NodeKind::kRef: return ref(f);
      case NodeKind::kAdd: return eval(f.lhs()) + eval(f.rhs());
      case NodeKind::kSub: return eval(f.lhs()) - eval(f.rhs());
      case NodeKind::kMul: return eval(f.lhs()) * eval(f.rhs());
      case NodeKind::kDiv: {
        const double d = eval(f.rhs());
        if (d == 0.0) throw Error(Errc::kDivisionByZero, print_formula(f));
        return eval(f.lhs()) / d;
      }
      case NodeKind::kNeg: return -eval(f.args[0]);
      case NodeKind::kSum: return sum(f, 0);
      case NodeKind::kCompareChain:
        throw Error(Errc::kSyntax, "comparison inside an expression");
    }
    return 0.0;
  }

 private:
  double sum(const Formula& f, std::size_t k) {
    if (k == f.bindings.size()) return eval(f.body());
    const auto& b = f.bindings.bindings[k];
    const long n = static_cast<long>(set(b.set_name).size());
    double total = 0.0;
    for (long i = 1; i <= n; ++i) {
      env.emplace_back(b.index, i);
      total += sum(f, k + 1);
      env.pop_back();
    }
    return total;
  }

  const SetDef& set(const std::string& name) const {
    const SetDef* s = model_.find_set(name);
    if (s == nullptr) throw Error(Errc::kUnknownSymbol, "set " + name);
    return *s;
  }

  std::vector<long> tuple(const Formula& f, const std::string& domain) {
    const DomainSpec spec = parse_domain(domain);
    if (spec.size() != f.subscripts.size()) {
      throw Error(Errc::kSubscriptArityMismatch, f.name);
    }
    std::vector<long> t;
    for (std::size_t k = 0; k < f.subscripts.size(); ++k) {
      long value = 0;
      bool found = false;
      for (auto it = env.rbegin(); it != env.rend() && !found; ++it) {
        if (it->first == f.subscripts[k]) {
          value = it->second;
          found = true;
        }
      }
      if (!found) throw Error(Errc::kUnboundIndex, f.subscripts[k]);
      if (value < 1 ||
          value > static_cast<long>(set(spec.bindings[k].set_name).size())) {
        throw Error(Errc::kIndexOutOfRange, f.name);
      }
      t.push_back(value);
    }
    return t;
  }

  double ref(const Formula& f) {
    if (const ParamDef* p = model_.find_parameter(f.name)) {
      return p->data.at(tuple(f, p->domain));
    }
    if (const VarDef* v = model_.find_variable(f.name)) {
      auto it = assignment_.find({v->name, tuple(f, v->domain)});
      if (it == assignment_.end()) {
        throw Error(Errc::kInvalidModel, "assignment misses " + f.name);
      }
      return it->second;
    }
    throw Error(Errc::kUnknownSymbol, f.name);
  }

  const StructuredModel& model_;
  const Assignment& assignment_;
};

}  // namespace naive_detail

// Evaluates objective and constraints by direct interpretation of the
// abstract formulas over every index tuple. Constraint checks are reported
// in the same order and with the same names as expand() produces.
inline NaiveEvaluation evaluate_naive(const StructuredModel& model,
                                      const Assignment& assignment,
                                      double tolerance = 1e-6) {
  NaiveEvaluation out;
  naive_detail::Interpreter interp(model, assignment);
  const auto& obj = model.objectives.at(0);
  out.objective_value = interp.eval(instantiate_detail::objective_formula(obj));
  for (const auto& c : model.constraints) {
    const DomainSpec domain = parse_domain(c.domain);
    std::vector<std::size_t> sizes;
    for (const auto& b : domain.bindings) {
      const SetDef* s = model.find_set(b.set_name);
      if (s == nullptr) throw Error(Errc::kUnknownSymbol, b.set_name);
      sizes.push_back(s->size());
    }
    const auto segments = parse_formula(c.function);
    for_each_tuple(sizes, [&](const std::vector<long>& t) {
      interp.env.clear();
      for (std::size_t k = 0; k < t.size(); ++k) {
        interp.env.emplace_back(domain.bindings[k].index, t[k]);
      }
      for (std::size_t s = 0; s < segments.size(); ++s) {
        const Formula& chain = segments[s];
        if (!chain.is_comparison()) {
          throw Error(Errc::kMissingRelation, c.name);
        }
        std::vector<double> values;
        for (const auto& op : chain.args) values.push_back(interp.eval(op));
        for (std::size_t l = 0; l < chain.relations.size(); ++l) {
          ConstraintCheck check;
          check.name = c.name + tuple_suffix(t) + "_s" +
                       std::to_string(s + 1) + "_c" + std::to_string(l + 1);
          check.lhs = values[l];
          check.rhs = values[l + 1];
          check.relation = chain.relations[l];
          check.satisfied =
              relation_holds(check.lhs, check.relation, check.rhs, tolerance);
          out.constraints.push_back(std::move(check));
        }
      }
    });
  }
  return out;
}

}  // namespace orsearch

#endif  // ORSEARCH_INSTANTIATE_HPP_
