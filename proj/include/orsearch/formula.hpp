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

// Formula mini-language used in model documents.
//
//   <sum>_{i <in> I, j <in> J} c_{i,j} * x_{i,j} <= cap
//
// Supported special forms: comparison chains (`a < b < c`), comma separated
// segments, consecutive sums (merged into one), and juxtaposition as
// multiplication (`a_{i}x_{i}`). Numeric subscripts, parametrized summation
// sets (`Successors_{k}`), nested domain braces and domain filters are
// rejected with typed errors.

#ifndef ORSEARCH_FORMULA_HPP_
#define ORSEARCH_FORMULA_HPP_

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <system_error>
#include <utility>
#include <vector>

#include "orsearch/error.hpp"

namespace orsearch {

struct IndexBinding {
  std::string index;
  std::string set_name;

  bool operator==(const IndexBinding&) const = default;
};

struct DomainSpec {
  std::vector<IndexBinding> bindings;

  bool empty() const { return bindings.empty(); }
  std::size_t size() const { return bindings.size(); }
  bool operator==(const DomainSpec&) const = default;
};

enum class Relation { kLE, kGE, kLT, kGT, kEQ };

constexpr std::string_view relation_text(Relation r) {
  switch (r) {
    case Relation::kLE: return "<=";
    case Relation::kGE: return ">=";
    case Relation::kLT: return "<";
    case Relation::kGT: return ">";
    case Relation::kEQ: return "=";
  }
  return "?";
}

// Mirror image used when the two sides of a comparison are swapped.
constexpr Relation reversed(Relation r) {
  switch (r) {
    case Relation::kLE: return Relation::kGE;
    case Relation::kGE: return Relation::kLE;
    case Relation::kLT: return Relation::kGT;
    case Relation::kGT: return Relation::kLT;
    case Relation::kEQ: return Relation::kEQ;
  }
  return r;
}

enum class NodeKind {
  kNumber,
  kRef,
  kAdd,
  kSub,
  kMul,
  kDiv,
  kNeg,
  kSum,
  kCompareChain,
};

// One node of a parsed formula. Field use depends on `kind`:
//   kNumber        value
//   kRef           name, subscripts
//   kAdd..kDiv     args[0], args[1]
//   kNeg           args[0]
//   kSum           bindings, args[0] (body)
//   kCompareChain  args (operands), relations (args.size() - 1 of them)
struct Formula {
  NodeKind kind = NodeKind::kNumber;
  double value = 0.0;
  std::string name;
  std::vector<std::string> subscripts;
  DomainSpec bindings;
  std::vector<Formula> args;
  std::vector<Relation> relations;

  bool operator==(const Formula&) const = default;

  static Formula number(double v) {
    Formula f;
    f.kind = NodeKind::kNumber;
    f.value = v;
    return f;
  }
  static Formula ref(std::string name, std::vector<std::string> subs = {}) {
    Formula f;
    f.kind = NodeKind::kRef;
    f.name = std::move(name);
    f.subscripts = std::move(subs);
    return f;
  }
  static Formula binary(NodeKind kind, Formula lhs, Formula rhs) {
    Formula f;
    f.kind = kind;
    f.args.push_back(std::move(lhs));
    f.args.push_back(std::move(rhs));
    return f;
  }
  static Formula neg(Formula operand) {
    Formula f;
    f.kind = NodeKind::kNeg;
    f.args.push_back(std::move(operand));
    return f;
  }
  // Builds a Sum, folding a directly nested Sum body into one node.
  static Formula sum(DomainSpec bindings, Formula body) {
    Formula f;
    f.kind = NodeKind::kSum;
    f.bindings = std::move(bindings);
    if (body.kind == NodeKind::kSum) {
      for (auto& b : body.bindings.bindings) {
        f.bindings.bindings.push_back(std::move(b));
      }
      f.args.push_back(std::move(body.args[0]));
    } else {
      f.args.push_back(std::move(body));
    }
    return f;
  }
  static Formula chain(std::vector<Formula> operands,
                       std::vector<Relation> relations) {
    Formula f;
    f.kind = NodeKind::kCompareChain;
    f.args = std::move(operands);
    f.relations = std::move(relations);
    return f;
  }

  const Formula& lhs() const { return args[0]; }
  const Formula& rhs() const { return args[1]; }
  const Formula& body() const { return args[0]; }
  bool is_comparison() const { return kind == NodeKind::kCompareChain; }
};

inline bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  auto head = [](char c) {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_';
  };
  auto tail = [&](char c) { return head(c) || (c >= '0' && c <= '9'); };
  if (!head(s[0])) return false;
  return std::all_of(s.begin() + 1, s.end(), tail);
}

// Shortest text that reads back as the same double.
inline std::string format_number(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace formula_detail {

enum class Tok {
  kNumber,
  kIdent,
  kSum,
  kIn,
  kUnderscore,
  kLBrace,
  kRBrace,
  kLParen,
  kRParen,
  kComma,
  kPlus,
  kMinus,
  kStar,
  kSlash,
  kRel,
  kColon,
  kPipe,
  kEnd,
};

struct Token {
  Tok kind;
  std::size_t offset;
  std::string text;
  double number = 0.0;
  Relation relation = Relation::kEQ;
};

[[noreturn]] inline void fail(Errc code, std::string_view source,
                              std::size_t offset, const std::string& what) {
  std::string msg = what + " at offset " + std::to_string(offset) + "\n  ";
  msg.append(source);
  msg += "\n  ";
  msg.append(std::min(offset, source.size()), ' ');
  msg += '^';
  throw Error(code, msg);
}

inline bool ident_head(char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_';
}
inline bool digit(char c) { return c >= '0' && c <= '9'; }

inline std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto starts = [&](std::string_view lit) {
    return src.substr(i, lit.size()) == lit;
  };
  while (i < src.size()) {
    const char c = src[i];
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      ++i;
      continue;
    }
    Token t{Tok::kEnd, i, {}};
    if (c == '_' && i + 1 < src.size() && src[i + 1] == '{') {
      t.kind = Tok::kUnderscore;
      ++i;
    } else if (ident_head(c)) {
      std::size_t j = i + 1;
      while (j < src.size() && (ident_head(src[j]) || digit(src[j]))) {
        if (src[j] == '_' && j + 1 < src.size() && src[j + 1] == '{') break;
        ++j;
      }
      t.kind = Tok::kIdent;
      t.text = std::string(src.substr(i, j - i));
      i = j;
    } else if (digit(c) ||
               (c == '.' && i + 1 < src.size() && digit(src[i + 1]))) {
      std::size_t j = i;
      while (j < src.size() && digit(src[j])) ++j;
      if (j < src.size() && src[j] == '.') {
        ++j;
        while (j < src.size() && digit(src[j])) ++j;
      }
      if (j < src.size() && (src[j] == 'e' || src[j] == 'E')) {
        std::size_t k = j + 1;
        if (k < src.size() && (src[k] == '+' || src[k] == '-')) ++k;
        if (k < src.size() && digit(src[k])) {
          while (k < src.size() && digit(src[k])) ++k;
          j = k;
        }
      }
      t.kind = Tok::kNumber;
      t.text = std::string(src.substr(i, j - i));
      auto res = std::from_chars(src.data() + i, src.data() + j, t.number);
      if (res.ec != std::errc()) {
        fail(Errc::kSyntax, src, i, "bad numeric literal");
      }
      i = j;
    } else if (starts("<sum>")) {
      t.kind = Tok::kSum;
      i += 5;
    } else if (starts("<in>")) {
      t.kind = Tok::kIn;
      i += 4;
    } else if (starts("<=") || starts("=<")) {
      t.kind = Tok::kRel;
      t.relation = Relation::kLE;
      i += 2;
    } else if (starts(">=") || starts("=>")) {
      t.kind = Tok::kRel;
      t.relation = Relation::kGE;
      i += 2;
    } else if (starts("==")) {
      t.kind = Tok::kRel;
      t.relation = Relation::kEQ;
      i += 2;
    } else {
      switch (c) {
        case '<': t.kind = Tok::kRel; t.relation = Relation::kLT; break;
        case '>': t.kind = Tok::kRel; t.relation = Relation::kGT; break;
        case '=': t.kind = Tok::kRel; t.relation = Relation::kEQ; break;
        case '{': t.kind = Tok::kLBrace; break;
        case '}': t.kind = Tok::kRBrace; break;
        case '(': t.kind = Tok::kLParen; break;
        case ')': t.kind = Tok::kRParen; break;
        case ',': t.kind = Tok::kComma; break;
        case '+': t.kind = Tok::kPlus; break;
        case '-': t.kind = Tok::kMinus; break;
        case '*': t.kind = Tok::kStar; break;
        case '/': t.kind = Tok::kSlash; break;
        case ':': t.kind = Tok::kColon; break;
        case '|': t.kind = Tok::kPipe; break;
        default:
          fail(Errc::kSyntax, src, i,
               std::string("unexpected character '") + c + "'");
      }
      ++i;
    }
    out.push_back(std::move(t));
  }
  out.push_back(Token{Tok::kEnd, src.size(), {}});
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src), toks_(lex(src)) {}

  std::vector<Formula> formulas() {
    if (peek().kind == Tok::kEnd) fail(Errc::kSyntax, "empty formula");
    std::vector<Formula> out;
    for (;;) {
      out.push_back(segment());
      if (peek().kind == Tok::kComma) {
        ++pos_;
        continue;
      }
      if (peek().kind != Tok::kEnd) fail(Errc::kSyntax, "unexpected token");
      return out;
    }
  }

  DomainSpec domain() {
    DomainSpec spec;
    if (peek().kind == Tok::kEnd) return spec;
    while (peek().kind != Tok::kEnd) {
      if (peek().kind == Tok::kComma && !spec.empty()) {
        ++pos_;
        continue;
      }
      if (peek().kind != Tok::kLBrace) {
        fail(Errc::kMalformedDomain, "expected '{'");
      }
      ++pos_;
      bindings_into(spec);
    }
    return spec;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }

  [[noreturn]] void fail(Errc code, const std::string& what) const {
    formula_detail::fail(code, src_, peek().offset, what);
  }

  void expect(Tok kind, const char* what) {
    if (peek().kind != kind) fail(Errc::kSyntax, std::string("expected ") + what);
    ++pos_;
  }

  // Parses `i <in> I, j <in> J}` (opening brace already consumed).
  void bindings_into(DomainSpec& spec) {
    bool any = false;
    for (;;) {
      const Token& t = peek();
      if (t.kind == Tok::kRBrace) {
        if (!any) fail(Errc::kMalformedDomain, "empty index domain");
        ++pos_;
        return;
      }
      if (t.kind == Tok::kComma && any) {
        ++pos_;
        continue;
      }
      if (t.kind == Tok::kLBrace) {
        fail(Errc::kNestedDomain,
             "nested braces in an index domain are not supported");
      }
      if (t.kind == Tok::kColon || t.kind == Tok::kPipe) {
        fail(Errc::kFilterNotSupported,
             "filtered index domains are not supported");
      }
      if (t.kind == Tok::kEnd) fail(Errc::kMalformedDomain, "unclosed '{'");
      if (t.kind != Tok::kIdent) {
        fail(Errc::kMalformedDomain, "expected an index name");
      }
      IndexBinding b;
      b.index = t.text;
      ++pos_;
      if (peek().kind != Tok::kIn) {
        fail(Errc::kMalformedDomain, "expected '<in>'");
      }
      ++pos_;
      if (peek().kind != Tok::kIdent) {
        fail(Errc::kMalformedDomain, "expected a set name");
      }
      b.set_name = peek().text;
      ++pos_;
      if (peek().kind == Tok::kUnderscore) {
        fail(Errc::kUnsupportedParametrizedSumDomain,
             "subscripted set '" + b.set_name +
                 "' cannot be used as an index domain");
      }
      if (b.index == b.set_name) {
        fail(Errc::kMalformedDomain,
             "index '" + b.index + "' has the same name as its set");
      }
      for (const auto& other : spec.bindings) {
        if (other.index == b.index) {
          fail(Errc::kDuplicateIndex, "index '" + b.index + "' bound twice");
        }
      }
      spec.bindings.push_back(std::move(b));
      any = true;
    }
  }

  Formula segment() {
    Formula first = expr();
    if (peek().kind != Tok::kRel) return first;
    std::vector<Formula> operands;
    std::vector<Relation> rels;
    operands.push_back(std::move(first));
    while (peek().kind == Tok::kRel) {
      rels.push_back(peek().relation);
      ++pos_;
      operands.push_back(expr());
    }
    return Formula::chain(std::move(operands), std::move(rels));
  }

  Formula expr() {
    Formula acc = term();
    for (;;) {
      if (peek().kind == Tok::kPlus) {
        ++pos_;
        acc = Formula::binary(NodeKind::kAdd, std::move(acc), term());
      } else if (peek().kind == Tok::kMinus) {
        ++pos_;
        acc = Formula::binary(NodeKind::kSub, std::move(acc), term());
      } else {
        return acc;
      }
    }
  }

  static bool begins_value(Tok k) {
    return k == Tok::kIdent || k == Tok::kNumber || k == Tok::kLParen ||
           k == Tok::kSum;
  }

  Formula term() {
    Formula acc = unary();
    for (;;) {
      const Tok k = peek().kind;
      if (k == Tok::kStar) {
        ++pos_;
        acc = Formula::binary(NodeKind::kMul, std::move(acc), unary());
      } else if (k == Tok::kSlash) {
        ++pos_;
        acc = Formula::binary(NodeKind::kDiv, std::move(acc), unary());
      } else if (begins_value(k)) {
        // juxtaposition: `a_{i}x_{i}` reads as `a_{i}*x_{i}`
        acc = Formula::binary(NodeKind::kMul, std::move(acc), unary());
      } else {
        return acc;
      }
    }
  }

  Formula unary() {
    if (peek().kind == Tok::kMinus) {
      ++pos_;
      if (peek().kind == Tok::kNumber) {
        const double v = peek().number;
        ++pos_;
        return Formula::number(-v);
      }
      return Formula::neg(unary());
    }
    if (peek().kind == Tok::kPlus) {
      ++pos_;
      return unary();
    }
    return primary();
  }

  Formula primary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::kNumber: {
        ++pos_;
        return Formula::number(t.number);
      }
      case Tok::kIdent: {
        std::string name = t.text;
        ++pos_;
        if (peek().kind != Tok::kUnderscore) return Formula::ref(name);
        ++pos_;
        expect(Tok::kLBrace, "'{'");
        return Formula::ref(std::move(name), subscripts());
      }
      case Tok::kLParen: {
        ++pos_;
        Formula inner = expr();
        if (peek().kind == Tok::kRel) {
          fail(Errc::kSyntax, "comparison inside parentheses");
        }
        expect(Tok::kRParen, "')'");
        return inner;
      }
      case Tok::kSum: {
        ++pos_;
        expect(Tok::kUnderscore, "'_' after <sum>");
        expect(Tok::kLBrace, "'{' after <sum>_");
        DomainSpec spec;
        bindings_into(spec);
        if (!begins_value(peek().kind) && peek().kind != Tok::kMinus &&
            peek().kind != Tok::kPlus) {
          fail(Errc::kSyntax, "missing summation body");
        }
        Formula body = term();
        if (body.kind == NodeKind::kSum) {
          for (const auto& inner : body.bindings.bindings) {
            for (const auto& outer : spec.bindings) {
              if (inner.index == outer.index) {
                fail(Errc::kDuplicateIndex,
                     "index '" + inner.index + "' bound twice in merged sum");
              }
            }
          }
        }
        return Formula::sum(std::move(spec), std::move(body));
      }
      case Tok::kEnd:
        fail(Errc::kSyntax, "unexpected end of formula");
      default:
        fail(Errc::kSyntax, "expected a value");
    }
  }

  // Parses `i, j}` (opening brace already consumed).
  std::vector<std::string> subscripts() {
    std::vector<std::string> subs;
    for (;;) {
      const Token& t = peek();
      if (t.kind == Tok::kRBrace) {
        if (subs.empty()) fail(Errc::kSyntax, "empty subscript list");
        ++pos_;
        return subs;
      }
      if (t.kind == Tok::kComma && !subs.empty()) {
        ++pos_;
        continue;
      }
      if (t.kind == Tok::kNumber) {
        fail(Errc::kUnsupportedNumericSubscript,
             "numeric subscript '" + t.text + "' is not supported");
      }
      if (t.kind != Tok::kIdent) fail(Errc::kSyntax, "expected an index name");
      subs.push_back(t.text);
      ++pos_;
      if (peek().kind == Tok::kUnderscore) {
        fail(Errc::kSyntax, "subscripted subscripts are not supported");
      }
    }
  }

  std::string_view src_;
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace formula_detail

// Parses a domain string such as "{a <in> Aircraft}" or
// "{i <in> I, j <in> J}". The empty string is the empty domain.
inline DomainSpec parse_domain(std::string_view text) {
  return formula_detail::Parser(text).domain();
}

// Parses a formula string into one tree per comma separated segment.
inline std::vector<Formula> parse_formula(std::string_view text) {
  return formula_detail::Parser(text).formulas();
}

inline std::string print_domain(const DomainSpec& d) {
  if (d.empty()) return {};
  std::string out = "{";
  for (std::size_t i = 0; i < d.bindings.size(); ++i) {
    if (i) out += ", ";
    out += d.bindings[i].index + " <in> " + d.bindings[i].set_name;
  }
  out += '}';
  return out;
}

namespace formula_detail {

inline int precedence(const Formula& f) {
  switch (f.kind) {
    case NodeKind::kAdd:
    case NodeKind::kSub: return 1;
    case NodeKind::kMul:
    case NodeKind::kDiv: return 2;
    case NodeKind::kNeg: return 3;
    case NodeKind::kNumber: return f.value < 0 || std::signbit(f.value) ? 3 : 4;
    case NodeKind::kRef: return 4;
    case NodeKind::kSum: return 0;
    case NodeKind::kCompareChain: return -1;
  }
  return 4;
}

inline void print_into(const Formula& f, std::string& out);

inline void print_wrapped(const Formula& f, bool wrap, std::string& out) {
  if (wrap) out += '(';
  print_into(f, out);
  if (wrap) out += ')';
}

inline void print_into(const Formula& f, std::string& out) {
  const bool sum_l = f.args.size() > 0 && f.args[0].kind == NodeKind::kSum;
  const bool sum_r = f.args.size() > 1 && f.args[1].kind == NodeKind::kSum;
  switch (f.kind) {
    case NodeKind::kNumber:
      out += format_number(f.value);
      return;
    case NodeKind::kRef:
      out += f.name;
      if (!f.subscripts.empty()) {
        out += "_{";
        for (std::size_t i = 0; i < f.subscripts.size(); ++i) {
          if (i) out += ',';
          out += f.subscripts[i];
        }
        out += '}';
      }
      return;
    case NodeKind::kAdd:
    case NodeKind::kSub:
      print_wrapped(f.args[0], !sum_l && precedence(f.args[0]) < 1, out);
      out += f.kind == NodeKind::kAdd ? " + " : " - ";
      print_wrapped(f.args[1], !sum_r && precedence(f.args[1]) <= 1, out);
      return;
    case NodeKind::kMul:
    case NodeKind::kDiv:
      print_wrapped(f.args[0], sum_l || precedence(f.args[0]) < 2, out);
      out += f.kind == NodeKind::kMul ? " * " : " / ";
      print_wrapped(f.args[1], sum_r || precedence(f.args[1]) <= 2, out);
      return;
    case NodeKind::kNeg: {
      const Formula& a = f.args[0];
      out += '-';
      print_wrapped(a, a.kind == NodeKind::kNumber || precedence(a) < 3, out);
      return;
    }
    case NodeKind::kSum: {
      out += "<sum>_";
      out += print_domain(f.bindings);
      out += ' ';
      const Formula& body = f.args[0];
      print_wrapped(body, body.kind == NodeKind::kSum || precedence(body) < 2,
                    out);
      return;
    }
    case NodeKind::kCompareChain:
      for (std::size_t i = 0; i < f.args.size(); ++i) {
        if (i) {
          out += ' ';
          out += relation_text(f.relations[i - 1]);
          out += ' ';
        }
        print_into(f.args[i], out);
      }
      return;
  }
}

inline void free_into(const Formula& f, std::vector<std::string>& bound,
                      std::set<std::string>& out) {
  switch (f.kind) {
    case NodeKind::kRef:
      for (const auto& s : f.subscripts) {
        if (std::find(bound.begin(), bound.end(), s) == bound.end()) {
          out.insert(s);
        }
      }
      return;
    case NodeKind::kSum: {
      const std::size_t mark = bound.size();
      for (const auto& b : f.bindings.bindings) bound.push_back(b.index);
      free_into(f.args[0], bound, out);
      bound.resize(mark);
      return;
    }
    default:
      for (const auto& a : f.args) free_into(a, bound, out);
  }
}

}  // namespace formula_detail

// Canonical text: explicit `*`, merged sums, minimal parentheses.
inline std::string print_formula(const Formula& f) {
  std::string out;
  formula_detail::print_into(f, out);
  return out;
}

inline std::string print_formulas(const std::vector<Formula>& segments) {
  std::string out;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    if (i) out += ", ";
    out += print_formula(segments[i]);
  }
  return out;
}

// Subscript identifiers not bound by an enclosing sum.
inline std::set<std::string> free_indices(const Formula& f) {
  std::set<std::string> out;
  std::vector<std::string> bound;
  formula_detail::free_into(f, bound, out);
  return out;
}

// Pre-order traversal over every node, mutable.
template <typename Fn>
void for_each_node(Formula& f, Fn&& fn) {
  fn(f);
  for (auto& a : f.args) for_each_node(a, fn);
}

template <typename Fn>
void for_each_node(const Formula& f, Fn&& fn) {
  fn(f);
  for (const auto& a : f.args) for_each_node(a, fn);
}

}  // namespace orsearch

#endif  // ORSEARCH_FORMULA_HPP_
