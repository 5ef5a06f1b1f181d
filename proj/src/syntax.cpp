// Copyright 2026 The Streamforge Authors.
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

#include "streamforge/syntax.hpp"

#include <algorithm>
#include <cctype>
#include <nlohmann/json.hpp>
#include <optional>
#include <regex>

namespace streamforge {

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& message)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

namespace {

struct SExpr {
  bool is_atom = false;
  std::string atom;
  std::vector<SExpr> items;
  std::size_t line = 1;
  std::size_t column = 1;

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(line, column, msg); }
  bool is(std::string_view a) const { return is_atom && atom == a; }
  std::string_view head() const {
    if (is_atom || items.empty() || !items[0].is_atom) return {};
    return items[0].atom;
  }
};

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  SExpr read_toplevel() {
    skip_space();
    if (pos_ >= text_.size()) throw ParseError(line_, col_, "empty input");
    SExpr e = read();
    skip_space();
    if (pos_ < text_.size()) throw ParseError(line_, col_, "trailing input after expression");
    return e;
  }

 private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  SExpr read() {
    skip_space();
    if (pos_ >= text_.size()) throw ParseError(line_, col_, "unexpected end of input");
    SExpr e;
    e.line = line_;
    e.column = col_;
    char c = text_[pos_];
    if (c == ')') throw ParseError(line_, col_, "unexpected ')'");
    if (c == '(') {
      advance();
      for (;;) {
        skip_space();
        if (pos_ >= text_.size()) throw ParseError(e.line, e.column, "unclosed '('");
        if (text_[pos_] == ')') {
          advance();
          break;
        }
        e.items.push_back(read());
      }
      return e;
    }
    e.is_atom = true;
    while (pos_ < text_.size()) {
      char d = text_[pos_];
      if (d == '(' || d == ')' || d == ';' || std::isspace(static_cast<unsigned char>(d))) break;
      e.atom.push_back(d);
      advance();
    }
    return e;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

bool looks_numeric(std::string_view a) {
  if (a.empty()) return false;
  char c = a.front();
  if (std::isdigit(static_cast<unsigned char>(c))) return true;
  return (c == '-' || c == '+') && a.size() > 1 && std::isdigit(static_cast<unsigned char>(a[1]));
}

bool valid_identifier(std::string_view a) {
  if (a.empty()) return false;
  if (!(std::isalpha(static_cast<unsigned char>(a.front())) || a.front() == '_')) return false;
  return std::all_of(a.begin(), a.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
  });
}

bool is_accum_name(std::string_view a) {
  static const std::regex kAccum("y[1-9][0-9]*");
  return std::regex_match(a.begin(), a.end(), kAccum);
}

// ---- types -----------------------------------------------------------------

enum class Ty { Num, Bool };

std::string_view ty_name(Ty t) { return t == Ty::Num ? "number" : "boolean"; }

[[noreturn]] void type_fail(const std::string& msg) { throw TypeError(msg); }

Ty infer(const Expr& e);

void expect(const Expr& e, Ty want, std::string_view where) {
  Ty got = infer(e);
  if (got != want) {
    type_fail(std::string(where) + ": expected " + std::string(ty_name(want)) + ", got " +
              std::string(ty_name(got)));
  }
}

Ty builtin_result(Builtin op, const std::vector<Ty>& args) {
  auto all = [&](Ty t) { return std::all_of(args.begin(), args.end(), [t](Ty a) { return a == t; }); };
  std::string name(builtin_name(op));
  if (is_boolean_connective(op)) {
    if (!all(Ty::Bool)) type_fail("'" + name + "' expects boolean arguments");
    return Ty::Bool;
  }
  if (!all(Ty::Num)) type_fail("'" + name + "' expects numeric arguments");
  return is_comparison(op) ? Ty::Bool : Ty::Num;
}

/// Type of applying function `fn` to arguments of the given types.
Ty apply_type(const Expr& fn, const std::vector<Ty>& args) {
  if (fn.kind() == NodeKind::Func) {
    Arity a = builtin_arity(fn.builtin());
    int n = static_cast<int>(args.size());
    if (n < a.min || (a.max >= 0 && n > a.max)) {
      type_fail("builtin '" + std::string(builtin_name(fn.builtin())) + "' cannot take " +
                std::to_string(n) + " argument(s)");
    }
    if (fn.builtin() == Builtin::Pow) type_fail("pow cannot be used in function position");
    return builtin_result(fn.builtin(), args);
  }
  if (fn.params().size() != args.size()) type_fail("lambda arity mismatch");
  // Lambda parameters are always numeric in this IR.
  for (Ty t : args) {
    if (t != Ty::Num) type_fail("lambda parameters must be numeric");
  }
  return infer(fn.lambda_body());
}

Ty infer(const Expr& e) {
  switch (e.kind()) {
    case NodeKind::Const:
    case NodeKind::Var:
    case NodeKind::AccumVar:
    case NodeKind::NewElem:
    case NodeKind::Hole:
    case NodeKind::Unknown:
      return Ty::Num;
    case NodeKind::Length:
      return Ty::Num;
    case NodeKind::Foldl: {
      expect(e.fold_init(), Ty::Num, "foldl initial value");
      if (apply_type(e.fn(), {Ty::Num, Ty::Num}) != Ty::Num) type_fail("foldl function must return a number");
      return Ty::Num;
    }
    case NodeKind::Map:
      if (apply_type(e.fn(), {Ty::Num}) != Ty::Num) type_fail("map function must return a number");
      return Ty::Num;
    case NodeKind::Filter:
      if (apply_type(e.fn(), {Ty::Num}) != Ty::Bool) type_fail("filter predicate must return a boolean");
      return Ty::Num;
    case NodeKind::Ite: {
      expect(e.child(0), Ty::Bool, "ite condition");
      Ty t = infer(e.child(1));
      expect(e.child(2), t, "ite else-branch");
      return t;
    }
    case NodeKind::Apply: {
      std::vector<Ty> args;
      for (const auto& a : e.args()) args.push_back(infer(a));
      if (e.fn().kind() == NodeKind::Func && e.fn().builtin() == Builtin::Pow) {
        if (args[0] != Ty::Num) type_fail("pow expects a numeric base");
        return Ty::Num;
      }
      return apply_type(e.fn(), args);
    }
    default:
      type_fail("unexpected node in scalar position");
  }
}

// ---- offline conversion ------------------------------------------------------

class OfflineConverter {
 public:
  OfflineConverter(std::vector<std::string> extra, bool allow_unbound)
      : extra_(std::move(extra)), allow_unbound_(allow_unbound) {}

  Expr scalar(const SExpr& s) {
    if (s.is_atom) return atom(s);
    if (s.items.empty()) s.fail("empty application");
    const SExpr& head = s.items[0];
    if (!head.is_atom) head.fail("expected an operator or form name");
    const std::string& h = head.atom;
    if (h == "ite") {
      arity(s, 3);
      return Expr::ite(scalar(s.items[1]), scalar(s.items[2]), scalar(s.items[3]));
    }
    if (h == "foldl") {
      arity(s, 3);
      Expr fn = function(s.items[1], 2);
      return Expr::foldl(std::move(fn), scalar(s.items[2]), list(s.items[3]));
    }
    if (h == "length") {
      arity(s, 1);
      return Expr::length(list(s.items[1]));
    }
    if (h == "let") return let(s);
    if (h == "map" || h == "filter") s.fail("list-typed expression used where a scalar is expected");
    if (h == "lambda") s.fail("lambda is only allowed in function position");
    auto op = builtin_from_name(h);
    if (!op) head.fail("unknown builtin '" + h + "'");
    Arity a = builtin_arity(*op);
    int n = static_cast<int>(s.items.size()) - 1;
    if (n < a.min || (a.max >= 0 && n > a.max)) {
      s.fail("'" + h + "' cannot take " + std::to_string(n) + " argument(s)");
    }
    std::vector<Expr> args;
    for (std::size_t i = 1; i < s.items.size(); ++i) args.push_back(scalar(s.items[i]));
    if (*op == Builtin::Pow) {
      const Expr& k = args[1];
      if (k.kind() != NodeKind::Const || !is_integer(k.value()) || sgn(k.value()) < 0) {
        s.items[2].fail("pow exponent must be a nonnegative integer literal");
      }
    }
    return Expr::apply(*op, std::move(args));
  }

  Expr list(const SExpr& s) {
    if (s.is("xs")) return Expr::list_var();
    std::string_view h = s.head();
    if (h == "map" || h == "filter") {
      arity(s, 2);
      Expr fn = function(s.items[1], 1);
      Expr l = list(s.items[2]);
      return h == "map" ? Expr::map(std::move(fn), std::move(l)) : Expr::filter(std::move(fn), std::move(l));
    }
    s.fail("expected a list expression (xs, map or filter)");
  }

  Expr function(const SExpr& s, std::size_t expected) {
    if (s.is_atom) {
      auto op = builtin_from_name(s.atom);
      if (!op) s.fail("unknown builtin '" + s.atom + "'");
      Arity a = builtin_arity(*op);
      int n = static_cast<int>(expected);
      if (n < a.min || (a.max >= 0 && n > a.max) || *op == Builtin::Pow) {
        s.fail("builtin '" + s.atom + "' cannot be used with " + std::to_string(n) + " argument(s)");
      }
      return Expr::func(*op);
    }
    if (s.head() != "lambda") s.fail("expected a builtin name or a lambda");
    arity(s, 2);
    const SExpr& ps = s.items[1];
    if (ps.is_atom) ps.fail("expected a parameter list");
    std::vector<std::string> params;
    for (const auto& p : ps.items) {
      if (!p.is_atom || !valid_identifier(p.atom) || is_reserved_name(p.atom)) {
        p.fail("invalid lambda parameter");
      }
      if (std::find(params.begin(), params.end(), p.atom) != params.end()) {
        p.fail("duplicate lambda parameter '" + p.atom + "'");
      }
      params.push_back(p.atom);
    }
    if (params.size() != expected) {
      s.fail("lambda takes " + std::to_string(params.size()) + " parameter(s), expected " +
             std::to_string(expected));
    }
    for (const auto& p : params) scope_.push_back(p);
    Expr body = scalar(s.items[2]);
    scope_.resize(scope_.size() - params.size());
    return Expr::lambda(std::move(params), std::move(body));
  }

 private:
  Expr atom(const SExpr& s) {
    const std::string& a = s.atom;
    if (looks_numeric(a)) {
      auto q = parse_rational(a);
      if (!q) s.fail("malformed rational literal '" + a + "'");
      return Expr::constant(*q);
    }
    if (a == "xs") s.fail("list variable 'xs' used outside a list position");
    if (std::find(scope_.rbegin(), scope_.rend(), a) != scope_.rend()) return Expr::var(a);
    if (std::find(extra_.begin(), extra_.end(), a) != extra_.end()) return Expr::var(a);
    if (builtin_from_name(a)) s.fail("builtin '" + a + "' used as a value");
    if (!valid_identifier(a)) s.fail("malformed token '" + a + "'");
    if (allow_unbound_) return Expr::var(a);
    s.fail("free variable '" + a + "'");
  }

  Expr let(const SExpr& s) {
    arity(s, 2);
    const SExpr& binding = s.items[1];
    if (binding.is_atom || binding.items.size() != 2 || !binding.items[0].is_atom) {
      binding.fail("expected (name expr) binding");
    }
    const std::string& name = binding.items[0].atom;
    if (!valid_identifier(name) || is_reserved_name(name)) binding.items[0].fail("invalid let name");
    Expr bound = scalar(binding.items[1]);
    scope_.push_back(name);
    Expr body = scalar(s.items[2]);
    scope_.pop_back();
    return substitute_var(body, name, bound);
  }

  static void arity(const SExpr& s, std::size_t n) {
    if (s.items.size() != n + 1) {
      s.fail("'" + std::string(s.head()) + "' expects " + std::to_string(n) + " operand(s)");
    }
  }

  std::vector<std::string> extra_;
  std::vector<std::string> scope_;
  bool allow_unbound_;
};

// ---- online conversion -------------------------------------------------------

class OnlineConverter {
 public:
  OnlineConverter(std::size_t arity, std::vector<std::string> extra)
      : arity_(arity), extra_(std::move(extra)) {}

  Expr scalar(const SExpr& s) {
    if (s.is_atom) {
      const std::string& a = s.atom;
      if (looks_numeric(a)) {
        auto q = parse_rational(a);
        if (!q) s.fail("malformed rational literal '" + a + "'");
        return Expr::constant(*q);
      }
      if (a == "x") return Expr::new_elem();
      if (is_accum_name(a)) {
        int i = std::stoi(a.substr(1));
        if (arity_ != 0 && static_cast<std::size_t>(i) > arity_) s.fail("accumulator '" + a + "' out of range");
        return Expr::accum(i);
      }
      if (std::find(extra_.begin(), extra_.end(), a) != extra_.end()) return Expr::var(a);
      s.fail("unbound name '" + a + "' in online expression");
    }
    if (s.items.empty()) s.fail("empty application");
    const SExpr& head = s.items[0];
    if (!head.is_atom) head.fail("expected an operator");
    const std::string& h = head.atom;
    if (h == "ite") {
      if (s.items.size() != 4) s.fail("'ite' expects 3 operand(s)");
      return Expr::ite(scalar(s.items[1]), scalar(s.items[2]), scalar(s.items[3]));
    }
    if (h == "foldl" || h == "map" || h == "filter" || h == "length" || h == "xs") {
      s.fail("list combinators are not allowed in online programs");
    }
    auto op = builtin_from_name(h);
    if (!op) head.fail("unknown builtin '" + h + "'");
    Arity a = builtin_arity(*op);
    int n = static_cast<int>(s.items.size()) - 1;
    if (n < a.min || (a.max >= 0 && n > a.max)) {
      s.fail("'" + h + "' cannot take " + std::to_string(n) + " argument(s)");
    }
    std::vector<Expr> args;
    for (std::size_t i = 1; i < s.items.size(); ++i) args.push_back(scalar(s.items[i]));
    if (*op == Builtin::Pow) {
      const Expr& k = args[1];
      if (k.kind() != NodeKind::Const || !is_integer(k.value()) || sgn(k.value()) < 0) {
        s.items[2].fail("pow exponent must be a nonnegative integer literal");
      }
    }
    return Expr::apply(*op, std::move(args));
  }

 private:
  std::size_t arity_;
  std::vector<std::string> extra_;
};

template <typename F>
auto with_type_errors(const SExpr& s, F&& f) {
  try {
    return f();
  } catch (const TypeError& e) {
    throw ParseError(s.line, s.column, std::string("type error: ") + e.what());
  }
}

void print_into(const Expr& e, std::string& out) {
  switch (e.kind()) {
    case NodeKind::Const:
      out += to_string(e.value());
      return;
    case NodeKind::Var:
      out += e.name();
      return;
    case NodeKind::ListVar:
      out += "xs";
      return;
    case NodeKind::Snoc:
      out += "(snoc xs x)";
      return;
    case NodeKind::AccumVar:
      out += "y" + std::to_string(e.index());
      return;
    case NodeKind::NewElem:
      out += "x";
      return;
    case NodeKind::Hole:
      out += "(hole " + std::to_string(e.index()) + ")";
      return;
    case NodeKind::Unknown:
      out += "(?? " + std::to_string(e.index()) + ")";
      return;
    case NodeKind::Func:
      out += builtin_name(e.builtin());
      return;
    case NodeKind::Lambda: {
      out += "(lambda (";
      for (std::size_t i = 0; i < e.params().size(); ++i) {
        if (i) out += ' ';
        out += e.params()[i];
      }
      out += ") ";
      print_into(e.lambda_body(), out);
      out += ')';
      return;
    }
    case NodeKind::Apply: {
      out += '(';
      print_into(e.fn(), out);
      for (std::size_t i = 1; i < e.children().size(); ++i) {
        out += ' ';
        print_into(e.child(i), out);
      }
      out += ')';
      return;
    }
    default: {
      static constexpr std::string_view kNames[] = {"ite", "map", "filter", "foldl", "length"};
      std::string_view name;
      switch (e.kind()) {
        case NodeKind::Ite: name = kNames[0]; break;
        case NodeKind::Map: name = kNames[1]; break;
        case NodeKind::Filter: name = kNames[2]; break;
        case NodeKind::Foldl: name = kNames[3]; break;
        default: name = kNames[4]; break;
      }
      out += '(';
      out += name;
      for (const auto& k : e.children()) {
        out += ' ';
        print_into(k, out);
      }
      out += ')';
    }
  }
}

}  // namespace

OfflineProgram parse_program(std::string_view text) {
  SExpr s = Reader(text).read_toplevel();
  if (s.head() != "program") s.fail("expected (program (xs ...) expr)");
  if (s.items.size() != 3) s.fail("'program' expects an argument list and a body");
  const SExpr& args = s.items[1];
  if (args.is_atom || args.items.empty() || !args.items[0].is("xs")) {
    args.fail("argument list must start with xs");
  }
  OfflineProgram p;
  for (std::size_t i = 1; i < args.items.size(); ++i) {
    const SExpr& a = args.items[i];
    if (!a.is_atom || !valid_identifier(a.atom) || is_reserved_name(a.atom) || a.atom == "x" ||
        is_accum_name(a.atom)) {
      a.fail("invalid extra argument name");
    }
    if (std::find(p.extra_args.begin(), p.extra_args.end(), a.atom) != p.extra_args.end()) {
      a.fail("duplicate argument '" + a.atom + "'");
    }
    p.extra_args.push_back(a.atom);
  }
  const SExpr& body = s.items[2];
  if (body.is("xs") || body.head() == "map" || body.head() == "filter") {
    body.fail("program body must be scalar-typed");
  }
  OfflineConverter conv(p.extra_args, false);
  p.body = conv.scalar(body);
  with_type_errors(body, [&] {
    if (infer(p.body) != Ty::Num) throw TypeError("program body must be numeric");
    return 0;
  });
  return p;
}

Expr parse_offline_expr(std::string_view text, const std::vector<std::string>& free) {
  SExpr s = Reader(text).read_toplevel();
  OfflineConverter conv(free, true);
  if (s.is("xs") || s.head() == "map" || s.head() == "filter") return conv.list(s);
  Expr e = conv.scalar(s);
  with_type_errors(s, [&] { return infer(e); });
  return e;
}

OnlineScheme parse_scheme(std::string_view text) {
  SExpr s = Reader(text).read_toplevel();
  if (s.head() != "scheme") s.fail("expected (scheme (init ...) (update ...))");
  std::size_t i = 1;
  OnlineScheme scheme;
  if (i < s.items.size() && s.items[i].head() == "args") {
    for (std::size_t k = 1; k < s.items[i].items.size(); ++k) {
      const SExpr& a = s.items[i].items[k];
      if (!a.is_atom || !valid_identifier(a.atom) || is_reserved_name(a.atom) || a.atom == "x" ||
          is_accum_name(a.atom)) {
        a.fail("invalid extra argument name");
      }
      scheme.extra_args.push_back(a.atom);
    }
    ++i;
  }
  if (i + 2 != s.items.size()) s.fail("scheme expects (init ...) and (update ...)");
  const SExpr& init = s.items[i];
  const SExpr& update = s.items[i + 1];
  if (init.head() != "init") init.fail("expected (init c1 ... cn)");
  for (std::size_t k = 1; k < init.items.size(); ++k) {
    const SExpr& c = init.items[k];
    auto q = c.is_atom ? parse_rational(c.atom) : std::nullopt;
    if (!q) c.fail("initializer entries must be rational literals");
    scheme.init.push_back(*q);
  }
  if (update.head() != "update" || update.items.size() != 4) {
    update.fail("expected (update (y1 ... yn) x (tuple e1 ... en))");
  }
  const SExpr& ys = update.items[1];
  if (ys.is_atom) ys.fail("expected accumulator list");
  for (std::size_t k = 0; k < ys.items.size(); ++k) {
    if (!ys.items[k].is("y" + std::to_string(k + 1))) {
      ys.items[k].fail("accumulators must be named y1 ... yn in order");
    }
  }
  if (!update.items[2].is("x")) update.items[2].fail("new element must be named x");
  const SExpr& tuple = update.items[3];
  if (tuple.head() != "tuple") tuple.fail("expected (tuple e1 ... en)");
  OnlineConverter conv(ys.items.size(), scheme.extra_args);
  for (std::size_t k = 1; k < tuple.items.size(); ++k) {
    Expr e = conv.scalar(tuple.items[k]);
    with_type_errors(tuple.items[k], [&] {
      if (infer(e) != Ty::Num) throw TypeError("update components must be numeric");
      return 0;
    });
    scheme.update.emplace_back(std::move(e));
  }
  if (scheme.update.size() != ys.items.size()) tuple.fail("tuple width does not match accumulator count");
  if (scheme.init.size() != ys.items.size()) init.fail("initializer width does not match accumulator count");
  return scheme;
}

OnlineExpr parse_online_expr(std::string_view text, const std::vector<std::string>& extra_args) {
  SExpr s = Reader(text).read_toplevel();
  OnlineConverter conv(0, extra_args);
  Expr e = conv.scalar(s);
  with_type_errors(s, [&] { return infer(e); });
  return OnlineExpr(std::move(e));
}

std::string print(const Expr& e) {
  std::string out;
  print_into(e, out);
  return out;
}

std::string print(const OnlineExpr& e) { return print(e.expr()); }

std::string print(const OfflineProgram& p) {
  std::string out = "(program (xs";
  for (const auto& a : p.extra_args) out += " " + a;
  out += ") ";
  print_into(p.body, out);
  out += ")";
  return out;
}

namespace {

std::string print_update(const OnlineScheme& s) {
  std::string out = "(update (";
  for (std::size_t i = 0; i < s.arity(); ++i) {
    if (i) out += ' ';
    out += "y" + std::to_string(i + 1);
  }
  out += ") x (tuple";
  for (const auto& u : s.update) {
    out += ' ';
    print_into(u.expr(), out);
  }
  out += "))";
  return out;
}

}  // namespace

std::string print(const OnlineScheme& s) {
  std::string out = "(scheme ";
  if (!s.extra_args.empty()) {
    out += "(args";
    for (const auto& a : s.extra_args) out += " " + a;
    out += ") ";
  }
  out += "(init";
  for (const auto& c : s.init) out += " " + to_string(c);
  out += ") " + print_update(s) + ")";
  return out;
}

std::string to_json(const OnlineScheme& s) {
  nlohmann::ordered_json j;
  j["init"] = nlohmann::json::array();
  j["init_approx"] = nlohmann::json::array();
  for (const auto& c : s.init) {
    j["init"].push_back(to_string(c));
    j["init_approx"].push_back(to_double(c));
  }
  j["arity"] = s.arity();
  if (!s.extra_args.empty()) j["args"] = s.extra_args;
  j["update"] = print_update(s);
  return j.dump();
}

}  // namespace streamforge
