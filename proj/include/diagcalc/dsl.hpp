// Copyright 2026 The diagcalc Authors
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

#pragma once

// Textual diagram language.
//
//   program := (decl | def)*
//   decl    := "declare" "box" NAME ":" INT "->" INT ("[" flag ("," flag)* "]")?
//   def     := "def" NAME "=" expr
//   expr    := term (";" term)*
//   term    := factor ("*" factor)*
//   factor  := atom | "(" expr ")"
//   atom    := "id" "(" INT ")" | "swap" | "Z" "(" INT "," INT ")" | "H"
//            | "ground" | "mix" | "cup" | "cap" | "point" "(" INT ")"
//            | "dagger" "(" expr ")" | NAME
//
// `;` composes in reading order (left happens first) and `*` places
// diagrams side by side. `#` starts a comment that runs to the end of the
// line. Flags are isometry, unitary and normalized (or normalized-state).

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "diagcalc/box_registry.hpp"
#include "diagcalc/diagram.hpp"

namespace diagcalc {

class ParseError : public std::runtime_error {
 public:
  enum class Kind { syntax, unknown_identifier, arity_mismatch, invalid };

  ParseError(Kind kind, int line, int col, const std::string& message)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(col) + ": " + message),
        kind_(kind),
        line_(line),
        col_(col) {}

  Kind kind() const { return kind_; }
  int line() const { return line_; }
  int col() const { return col_; }

 private:
  Kind kind_;
  int line_;
  int col_;
};

struct Expr {
  enum class Kind { id, swap, spider, hadamard, ground, mix, cup, cap, point, dagger, name, seq, tensor };

  Kind kind = Kind::id;
  int a = 0;  // id width, spider inputs, point index
  int b = 0;  // spider outputs
  std::string name;
  std::vector<Expr> kids;
  int line = 0;
  int col = 0;

  static Expr atom(Kind k, int a = 0, int b = 0) {
    Expr e;
    e.kind = k;
    e.a = a;
    e.b = b;
    return e;
  }
  static Expr ref(std::string n) {
    Expr e;
    e.kind = Kind::name;
    e.name = std::move(n);
    return e;
  }
  static Expr node(Kind k, std::vector<Expr> kids) {
    Expr e;
    e.kind = k;
    e.kids = std::move(kids);
    return e;
  }
};

struct BoxDecl {
  std::string name;
  int in_arity = 0;
  int out_arity = 0;
  BoxFlags flags;
};

struct Definition {
  std::string name;
  std::optional<Expr> ast;  // absent for diagrams that did not come from text
  Diagram diagram;
};

/// Box declarations and diagram definitions, in source order.
class Program {
 public:
  const std::vector<BoxDecl>& declarations() const { return decls_; }
  const std::vector<Definition>& definitions() const { return defs_; }
  const BoxRegistry& registry() const { return registry_; }

  const Definition* find(const std::string& name) const {
    for (const auto& d : defs_)
      if (d.name == name) return &d;
    return nullptr;
  }
  bool has_name(const std::string& name) const { return find(name) || registry_.contains(name); }

  void declare(BoxDecl decl, std::optional<CMatrix> matrix = std::nullopt) {
    if (has_name(decl.name)) throw RegistryError("name '" + decl.name + "' already in use");
    registry_.add({decl.name, decl.in_arity, decl.out_arity, decl.flags, std::move(matrix)});
    decl.flags = registry_.find(decl.name)->flags;
    decls_.push_back(std::move(decl));
  }

  void define(Definition def) {
    if (has_name(def.name)) throw RegistryError("name '" + def.name + "' already in use");
    defs_.push_back(std::move(def));
  }
  void define(const std::string& name, Diagram d) { define(Definition{name, std::nullopt, std::move(d)}); }

 private:
  std::vector<BoxDecl> decls_;
  std::vector<Definition> defs_;
  BoxRegistry registry_;
};

namespace detail {

struct Token {
  enum class Kind { ident, integer, punct, end };
  Kind kind = Kind::end;
  std::string text;
  int line = 1;
  int col = 1;
};

inline std::vector<Token> lex(const std::string& src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  auto is_word = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; };
  while (i < src.size()) {
    const char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    Token t;
    t.line = line;
    t.col = col;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      // Hyphens may join word parts ("bell-state"), never start or end a name.
      std::size_t j = i;
      while (j < src.size()) {
        if (is_word(src[j])) ++j;
        else if (src[j] == '-' && j + 1 < src.size() && is_word(src[j + 1]) && src[j + 1] != '>') ++j;
        else break;
      }
      t.kind = Token::Kind::ident;
      t.text = src.substr(i, j - i);
      advance(j - i);
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      if (j - i > 6) throw ParseError(ParseError::Kind::syntax, line, col, "integer literal too large");
      t.kind = Token::Kind::integer;
      t.text = src.substr(i, j - i);
      advance(j - i);
    } else if (c == '-' && i + 1 < src.size() && src[i + 1] == '>') {
      t.kind = Token::Kind::punct;
      t.text = "->";
      advance(2);
    } else if (std::string("():;*=,[]").find(c) != std::string::npos) {
      t.kind = Token::Kind::punct;
      t.text = std::string(1, c);
      advance(1);
    } else {
      throw ParseError(ParseError::Kind::syntax, line, col, std::string("unexpected character '") + c + "'");
    }
    out.push_back(std::move(t));
  }
  Token end;
  end.line = line;
  end.col = col;
  out.push_back(end);
  return out;
}

inline bool is_keyword(const std::string& s) {
  static const char* words[] = {"declare", "box", "def", "id", "swap", "Z", "H", "ground",
                                "mix", "cup", "cap", "point", "dagger"};
  return std::any_of(std::begin(words), std::end(words), [&](const char* w) { return s == w; });
}

class Parser {
 public:
  explicit Parser(const std::string& src) : toks_(lex(src)) {}

  Program program() {
    Program p;
    while (peek().kind != Token::Kind::end) {
      const Token& t = peek();
      if (t.kind == Token::Kind::ident && t.text == "declare") declaration(p);
      else if (t.kind == Token::Kind::ident && t.text == "def") definition(p);
      else fail(t, "expected 'declare' or 'def'");
    }
    return p;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

  [[noreturn]] static void fail(const Token& t, const std::string& msg) {
    const std::string got = t.kind == Token::Kind::end ? "end of input" : "'" + t.text + "'";
    throw ParseError(ParseError::Kind::syntax, t.line, t.col, msg + ", got " + got);
  }

  bool at_punct(const char* p) const {
    return peek().kind == Token::Kind::punct && peek().text == p;
  }
  const Token& expect_punct(const char* p) {
    if (!at_punct(p)) fail(peek(), std::string("expected '") + p + "'");
    return next();
  }
  void expect_word(const char* w) {
    if (peek().kind != Token::Kind::ident || peek().text != w) fail(peek(), std::string("expected '") + w + "'");
    next();
  }
  int integer() {
    if (peek().kind != Token::Kind::integer) fail(peek(), "expected an integer");
    return std::stoi(next().text);
  }
  const Token& name() {
    if (peek().kind != Token::Kind::ident || is_keyword(peek().text)) fail(peek(), "expected a name");
    return next();
  }

  void declaration(Program& p) {
    const Token& start = next();
    expect_word("box");
    const Token& n = name();
    expect_punct(":");
    BoxDecl d;
    d.name = n.text;
    d.in_arity = integer();
    expect_punct("->");
    d.out_arity = integer();
    if (at_punct("[")) {
      next();
      while (true) {
        const Token& f = next();
        if (f.kind != Token::Kind::ident) fail(f, "expected a flag");
        if (f.text == "isometry") d.flags.isometry = true;
        else if (f.text == "unitary") d.flags.unitary = true;
        else if (f.text == "normalized" || f.text == "normalized-state" || f.text == "normalized_state")
          d.flags.normalized_state = true;
        else throw ParseError(ParseError::Kind::syntax, f.line, f.col, "unknown flag '" + f.text + "'");
        if (at_punct(",")) {
          next();
          continue;
        }
        expect_punct("]");
        break;
      }
    }
    if (p.has_name(d.name))
      throw ParseError(ParseError::Kind::invalid, n.line, n.col, "name '" + d.name + "' already in use");
    try {
      p.declare(d);
    } catch (const RegistryError& e) {
      throw ParseError(ParseError::Kind::invalid, start.line, start.col, e.what());
    }
  }

  void definition(Program& p) {
    next();
    const Token& n = name();
    expect_punct("=");
    Expr e = expr();
    if (p.has_name(n.text))
      throw ParseError(ParseError::Kind::invalid, n.line, n.col, "name '" + n.text + "' already in use");
    Diagram d = elaborate(e, p);
    const auto problems = validate(d, &p.registry());
    if (!problems.empty())
      throw ParseError(ParseError::Kind::invalid, n.line, n.col,
                       "definition '" + n.text + "' is ill-formed: " + problems.front().message);
    p.define(Definition{n.text, std::move(e), std::move(d)});
  }

  Expr expr() {
    const Token& t0 = peek();
    std::vector<Expr> parts{term()};
    while (at_punct(";")) {
      next();
      parts.push_back(term());
    }
    if (parts.size() == 1) return std::move(parts[0]);
    Expr e = Expr::node(Expr::Kind::seq, std::move(parts));
    e.line = t0.line;
    e.col = t0.col;
    return e;
  }

  Expr term() {
    const Token& t0 = peek();
    std::vector<Expr> parts{factor()};
    while (at_punct("*")) {
      next();
      parts.push_back(factor());
    }
    if (parts.size() == 1) return std::move(parts[0]);
    Expr e = Expr::node(Expr::Kind::tensor, std::move(parts));
    e.line = t0.line;
    e.col = t0.col;
    return e;
  }

  Expr factor() {
    const Token& t = peek();
    if (at_punct("(")) {
      next();
      Expr e = expr();
      expect_punct(")");
      return e;
    }
    if (t.kind != Token::Kind::ident) fail(t, "expected a diagram");
    next();
    Expr e;
    using K = Expr::Kind;
    if (t.text == "id") {
      expect_punct("(");
      e = Expr::atom(K::id, integer());
      expect_punct(")");
    } else if (t.text == "swap") {
      e = Expr::atom(K::swap);
    } else if (t.text == "Z") {
      expect_punct("(");
      const int a = integer();
      expect_punct(",");
      const int b = integer();
      expect_punct(")");
      e = Expr::atom(K::spider, a, b);
    } else if (t.text == "H") {
      e = Expr::atom(K::hadamard);
    } else if (t.text == "ground") {
      e = Expr::atom(K::ground);
    } else if (t.text == "mix") {
      e = Expr::atom(K::mix);
    } else if (t.text == "cup") {
      e = Expr::atom(K::cup);
    } else if (t.text == "cap") {
      e = Expr::atom(K::cap);
    } else if (t.text == "point") {
      expect_punct("(");
      const Token& it = peek();
      e = Expr::atom(K::point, integer());
      if (e.a > 1) throw ParseError(ParseError::Kind::invalid, it.line, it.col, "classical point index must be 0 or 1");
      expect_punct(")");
    } else if (t.text == "dagger") {
      expect_punct("(");
      e = Expr::node(K::dagger, {expr()});
      expect_punct(")");
    } else if (is_keyword(t.text)) {
      fail(t, "expected a diagram");
    } else {
      e = Expr::ref(t.text);
    }
    e.line = t.line;
    e.col = t.col;
    return e;
  }

 public:
  static Diagram elaborate(const Expr& e, const Program& p) {
    using K = Expr::Kind;
    switch (e.kind) {
      case K::id: return gen::identity(e.a);
      case K::swap: return gen::swap();
      case K::spider: return gen::spider(e.a, e.b);
      case K::hadamard: return gen::hadamard();
      case K::ground: return gen::ground();
      case K::mix: return gen::mix();
      case K::cup: return gen::cup();
      case K::cap: return gen::cap();
      case K::point: return gen::point(e.a);
      case K::dagger: return dagger(elaborate(e.kids.at(0), p));
      case K::name: {
        if (const Definition* d = p.find(e.name)) return d->diagram;
        if (const BoxEntry* b = p.registry().find(e.name)) return gen::box(*b);
        throw ParseError(ParseError::Kind::unknown_identifier, e.line, e.col, "unknown identifier '" + e.name + "'");
      }
      case K::tensor: {
        Diagram r;
        for (const auto& k : e.kids) r = compose_tensor(r, elaborate(k, p));
        return r;
      }
      case K::seq: {
        Diagram r = elaborate(e.kids.at(0), p);
        for (std::size_t k = 1; k < e.kids.size(); ++k) {
          Diagram next = elaborate(e.kids[k], p);
          if (r.outputs() != next.inputs())
            throw ParseError(ParseError::Kind::arity_mismatch, e.kids[k].line, e.kids[k].col,
                             "arity mismatch in ';': " + std::to_string(r.outputs()) +
                                 " != " + std::to_string(next.inputs()));
          r = compose_seq(r, next);
        }
        return r;
      }
    }
    return {};
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Program parse(const std::string& text) { return detail::Parser(text).program(); }

/// Elaborates one expression against the names of `p`.
inline Diagram elaborate(const Expr& e, const Program& p) { return detail::Parser::elaborate(e, p); }

namespace detail {

inline void print_expr(std::ostream& os, const Expr& e, int context) {
  using K = Expr::Kind;
  switch (e.kind) {
    case K::id: os << "id(" << e.a << ")"; return;
    case K::swap: os << "swap"; return;
    case K::spider: os << "Z(" << e.a << "," << e.b << ")"; return;
    case K::hadamard: os << "H"; return;
    case K::ground: os << "ground"; return;
    case K::mix: os << "mix"; return;
    case K::cup: os << "cup"; return;
    case K::cap: os << "cap"; return;
    case K::point: os << "point(" << e.a << ")"; return;
    case K::name: os << e.name; return;
    case K::dagger:
      os << "dagger(";
      print_expr(os, e.kids.at(0), 0);
      os << ")";
      return;
    case K::seq:
    case K::tensor: {
      // context: 0 top level, 1 inside a tensor, 2 operand of a seq
      const bool is_seq = e.kind == K::seq;
      const bool paren = is_seq ? context == 1 : false;
      if (paren) os << "(";
      for (std::size_t k = 0; k < e.kids.size(); ++k) {
        if (k) os << (is_seq ? " ; " : " * ");
        print_expr(os, e.kids[k], is_seq ? 2 : 1);
      }
      if (paren) os << ")";
      return;
    }
  }
}

/// Width-n identity, or nothing when n = 0.
inline void push_id(std::vector<Expr>& parts, int n) {
  if (n > 0) parts.push_back(Expr::atom(Expr::Kind::id, n));
}

inline Expr tensor_of(std::vector<Expr> parts) {
  if (parts.empty()) return Expr::atom(Expr::Kind::id, 0);
  if (parts.size() == 1) return std::move(parts[0]);
  return Expr::node(Expr::Kind::tensor, std::move(parts));
}

inline Expr seq_of(std::vector<Expr> parts) {
  if (parts.empty()) return Expr::atom(Expr::Kind::id, 0);
  if (parts.size() == 1) return std::move(parts[0]);
  return Expr::node(Expr::Kind::seq, std::move(parts));
}

/// Nested cups with legs [a_k .. a_1, b_1 .. b_k], a_j joined to b_j.
inline Expr nested_cups(int k) {
  Expr e = Expr::atom(Expr::Kind::cup);
  for (int j = 1; j < k; ++j)
    e = seq_of({Expr::atom(Expr::Kind::cup),
                tensor_of({Expr::atom(Expr::Kind::id, 1), std::move(e), Expr::atom(Expr::Kind::id, 1)})});
  return e;
}

}  // namespace detail

class UnparseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An expression whose elaboration is isomorphic to `d` (scalar tag and
/// display flags aside). Every vertex is first written as a state, then the
/// legs are permuted with swaps and closed with caps.
inline Expr unparse(const Diagram& d) {
  using K = Expr::Kind;
  std::vector<Expr> states;
  std::map<Endpoint, int> source;  // vertex port -> leg position after the state layer
  int legs = d.inputs();
  for (int i = 0; i < d.inputs(); ++i) source[Endpoint::in(i)] = i;

  for (const auto& [id, v] : d.vertices()) {
    std::vector<Endpoint> order;
    for (const auto& l : d.legs(id)) order.push_back(Endpoint::at(id, l.port));
    switch (v.kind) {
      case VertexKind::spider: states.push_back(Expr::atom(K::spider, 0, static_cast<int>(order.size()))); break;
      case VertexKind::hadamard:
        states.push_back(detail::seq_of(
            {Expr::atom(K::cup), detail::tensor_of({Expr::atom(K::hadamard), Expr::atom(K::id, 1)})}));
        break;
      case VertexKind::environment: states.push_back(Expr::node(K::dagger, {Expr::atom(K::ground)})); break;
      case VertexKind::point: states.push_back(Expr::atom(K::point, v.point_index)); break;
      case VertexKind::box: {
        if (has_conjugate(v.variant))
          throw UnparseError("conjugate box '" + v.box_name + "' has no textual form");
        Expr b = Expr::ref(v.box_name);
        if (has_dagger(v.variant)) b = Expr::node(K::dagger, {std::move(b)});
        order.clear();
        for (int p = v.box_inputs - 1; p >= 0; --p) order.push_back(Endpoint::at(id, p));
        for (int p = 0; p < v.box_outputs; ++p) order.push_back(Endpoint::at(id, v.box_inputs + p));
        if (v.box_inputs == 0) {
          states.push_back(std::move(b));
        } else {
          std::vector<Expr> t;
          detail::push_id(t, v.box_inputs);
          t.push_back(std::move(b));
          states.push_back(detail::seq_of({detail::nested_cups(v.box_inputs), detail::tensor_of(std::move(t))}));
        }
        break;
      }
    }
    for (const auto& e : order) source[e] = legs++;
  }

  // Output-output wires need a cup of their own.
  std::map<WireId, int> cup_at;
  for (const auto& [wid, w] : d.wires())
    if (w.a.side == Endpoint::Side::output && w.b.side == Endpoint::Side::output) {
      cup_at[wid] = legs;
      legs += 2;
      states.push_back(Expr::atom(K::cup));
    }

  // Destination of every leg: output positions first, then cap pairs
  // numbered by their first leg.
  std::vector<int> dest(static_cast<std::size_t>(legs), -1);
  std::vector<std::pair<int, int>> caps;
  for (const auto& [wid, w] : d.wires()) {
    const bool a_out = w.a.side == Endpoint::Side::output, b_out = w.b.side == Endpoint::Side::output;
    if (a_out && b_out) {
      dest[static_cast<std::size_t>(cup_at.at(wid))] = w.a.id;
      dest[static_cast<std::size_t>(cup_at.at(wid) + 1)] = w.b.id;
    } else if (a_out || b_out) {
      const Endpoint& o = a_out ? w.a : w.b;
      dest[static_cast<std::size_t>(source.at(a_out ? w.b : w.a))] = o.id;
    } else {
      const int x = source.at(w.a), y = source.at(w.b);
      caps.emplace_back(std::min(x, y), std::max(x, y));
    }
  }
  std::sort(caps.begin(), caps.end());
  for (std::size_t k = 0; k < caps.size(); ++k) {
    dest[static_cast<std::size_t>(caps[k].first)] = d.outputs() + 2 * static_cast<int>(k);
    dest[static_cast<std::size_t>(caps[k].second)] = d.outputs() + 2 * static_cast<int>(k) + 1;
  }

  std::vector<Expr> layers;
  {
    std::vector<Expr> first;
    detail::push_id(first, d.inputs());
    for (auto& s : states) first.push_back(std::move(s));
    if (!states.empty()) layers.push_back(detail::tensor_of(std::move(first)));
  }
  // Odd-even transposition sort of the destinations, one swap layer per pass.
  for (int pass = 0; pass < legs + 1; ++pass) {
    bool any = false;
    for (int parity = 0; parity < 2; ++parity) {
      std::vector<Expr> row;
      int covered = 0;
      for (int i = parity; i + 1 < legs; i += 2) {
        if (dest[static_cast<std::size_t>(i)] > dest[static_cast<std::size_t>(i + 1)]) {
          std::swap(dest[static_cast<std::size_t>(i)], dest[static_cast<std::size_t>(i + 1)]);
          detail::push_id(row, i - covered);
          row.push_back(Expr::atom(K::swap));
          covered = i + 2;
          any = true;
        }
      }
      if (covered == 0) continue;
      detail::push_id(row, legs - covered);
      layers.push_back(detail::tensor_of(std::move(row)));
    }
    if (!any) break;
  }
  const int n_caps = static_cast<int>(caps.size());
  if (n_caps > 0) {
    std::vector<Expr> last;
    detail::push_id(last, d.outputs());
    for (int k = 0; k < n_caps; ++k) last.push_back(Expr::atom(K::cap));
    layers.push_back(detail::tensor_of(std::move(last)));
  }
  if (layers.empty()) return Expr::atom(K::id, d.inputs());
  return detail::seq_of(std::move(layers));
}

inline std::string to_text(const Expr& e) {
  std::ostringstream os;
  detail::print_expr(os, e, 0);
  return os.str();
}

/// Source text for `p`: declarations first, then definitions in order.
inline std::string print(const Program& p) {
  std::ostringstream os;
  for (const auto& d : p.declarations()) {
    os << "declare box " << d.name << " : " << d.in_arity << " -> " << d.out_arity;
    std::vector<std::string> flags;
    if (d.flags.unitary) flags.push_back("unitary");
    else if (d.flags.normalized_state) flags.push_back("normalized");
    else if (d.flags.isometry) flags.push_back("isometry");
    if (d.flags.unitary && d.flags.normalized_state) flags.push_back("normalized");
    if (!flags.empty()) {
      os << " [";
      for (std::size_t k = 0; k < flags.size(); ++k) os << (k ? ", " : "") << flags[k];
      os << "]";
    }
    os << "\n";
  }
  for (const auto& d : p.definitions()) {
    os << "def " << d.name << " = " << to_text(d.ast ? *d.ast : unparse(d.diagram)) << "\n";
  }
  return os.str();
}

}  // namespace diagcalc
