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

#include "streamforge/ir.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <unordered_set>

namespace streamforge {

namespace {

struct BuiltinInfo {
  Builtin op;
  std::string_view name;
  Arity arity;
};

constexpr std::array<BuiltinInfo, 17> kBuiltins{{
    {Builtin::Add, "+", {2, -1}},
    {Builtin::Sub, "-", {2, 2}},
    {Builtin::Mul, "*", {2, -1}},
    {Builtin::Div, "/", {2, 2}},
    {Builtin::Neg, "neg", {1, 1}},
    {Builtin::Min, "min", {2, -1}},
    {Builtin::Max, "max", {2, -1}},
    {Builtin::Abs, "abs", {1, 1}},
    {Builtin::Pow, "pow", {2, 2}},
    {Builtin::Lt, "<", {2, 2}},
    {Builtin::Le, "<=", {2, 2}},
    {Builtin::Gt, ">", {2, 2}},
    {Builtin::Ge, ">=", {2, 2}},
    {Builtin::Eq, "=", {2, 2}},
    {Builtin::And, "and", {2, -1}},
    {Builtin::Or, "or", {2, -1}},
    {Builtin::Not, "not", {1, 1}},
}};

inline void hash_combine(std::size_t& seed, std::size_t v) {
  seed ^= v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
}

bool nodes_equal(const Node& a, const Node& b) {
  if (a.kind != b.kind || a.hash != b.hash || a.size != b.size) return false;
  switch (a.kind) {
    case NodeKind::Const:
      if (a.value != b.value) return false;
      break;
    case NodeKind::Var:
      if (a.name != b.name) return false;
      break;
    case NodeKind::AccumVar:
    case NodeKind::Hole:
    case NodeKind::Unknown:
      if (a.index != b.index) return false;
      break;
    case NodeKind::Func:
      if (a.op != b.op) return false;
      break;
    case NodeKind::Lambda:
      if (a.params != b.params) return false;
      break;
    default:
      break;
  }
  if (a.kids.size() != b.kids.size()) return false;
  for (std::size_t i = 0; i < a.kids.size(); ++i) {
    if (a.kids[i] != b.kids[i]) return false;
  }
  return true;
}

std::string fresh_name(const std::string& base, const std::set<std::string>& avoid) {
  for (int k = 1;; ++k) {
    std::string candidate = base + "_" + std::to_string(k);
    if (!avoid.contains(candidate)) return candidate;
  }
}

void collect_free(const Expr& e, std::multiset<std::string>& bound, std::set<std::string>& out) {
  switch (e.kind()) {
    case NodeKind::Var:
      if (!bound.contains(e.name())) out.insert(e.name());
      return;
    case NodeKind::Lambda: {
      for (const auto& p : e.params()) bound.insert(p);
      collect_free(e.lambda_body(), bound, out);
      for (const auto& p : e.params()) bound.erase(bound.find(p));
      return;
    }
    default:
      for (const auto& k : e.children()) collect_free(k, bound, out);
  }
}

Expr rebuild(const Expr& e, std::vector<Expr> kids);

Expr subst_var_impl(const Expr& e, const std::string& name, const Expr& repl,
                    const std::set<std::string>& repl_free) {
  switch (e.kind()) {
    case NodeKind::Var:
      return e.name() == name ? repl : e;
    case NodeKind::Lambda: {
      const auto& params = e.params();
      if (std::find(params.begin(), params.end(), name) != params.end()) return e;
      auto body_free = free_vars(e.lambda_body());
      if (!body_free.contains(name)) return e;
      std::vector<std::string> new_params = params;
      Expr body = e.lambda_body();
      for (auto& p : new_params) {
        if (!repl_free.contains(p)) continue;
        std::set<std::string> avoid = repl_free;
        avoid.insert(body_free.begin(), body_free.end());
        avoid.insert(params.begin(), params.end());
        avoid.insert(new_params.begin(), new_params.end());
        std::string renamed = fresh_name(p, avoid);
        body = subst_var_impl(body, p, Expr::var(renamed), {renamed});
        p = renamed;
      }
      return Expr::lambda(std::move(new_params), subst_var_impl(body, name, repl, repl_free));
    }
    default: {
      if (e.children().empty()) return e;
      std::vector<Expr> kids;
      kids.reserve(e.children().size());
      bool changed = false;
      for (const auto& k : e.children()) {
        kids.push_back(subst_var_impl(k, name, repl, repl_free));
        changed |= !kids.back().same_node(k);
      }
      return changed ? rebuild(e, std::move(kids)) : e;
    }
  }
}

Expr subst_expr_impl(const Expr& e, const Expr& target, const Expr& repl,
                     const std::set<std::string>& target_free,
                     const std::set<std::string>& repl_free) {
  if (e == target) return repl;
  if (e.children().empty()) return e;
  if (e.kind() == NodeKind::Lambda) {
    const auto& params = e.params();
    for (const auto& p : params) {
      if (target_free.contains(p)) return e;
    }
    std::vector<std::string> new_params = params;
    Expr body = e.lambda_body();
    for (auto& p : new_params) {
      if (!repl_free.contains(p)) continue;
      std::set<std::string> avoid = repl_free;
      auto bf = free_vars(body);
      avoid.insert(bf.begin(), bf.end());
      avoid.insert(new_params.begin(), new_params.end());
      std::string renamed = fresh_name(p, avoid);
      body = subst_var_impl(body, p, Expr::var(renamed), {renamed});
      p = renamed;
    }
    Expr new_body = subst_expr_impl(body, target, repl, target_free, repl_free);
    if (new_params == params && new_body.same_node(e.lambda_body())) return e;
    return Expr::lambda(std::move(new_params), std::move(new_body));
  }
  std::vector<Expr> kids;
  kids.reserve(e.children().size());
  bool changed = false;
  for (const auto& k : e.children()) {
    kids.push_back(subst_expr_impl(k, target, repl, target_free, repl_free));
    changed |= !kids.back().same_node(k);
  }
  return changed ? rebuild(e, std::move(kids)) : e;
}

Expr rebuild(const Expr& e, std::vector<Expr> kids) {
  switch (e.kind()) {
    case NodeKind::Lambda:
      return Expr::lambda(e.params(), std::move(kids[0]));
    case NodeKind::Apply: {
      Expr fn = kids[0];
      kids.erase(kids.begin());
      return Expr::apply(std::move(fn), std::move(kids));
    }
    case NodeKind::Ite:
      return Expr::ite(std::move(kids[0]), std::move(kids[1]), std::move(kids[2]));
    case NodeKind::Map:
      return Expr::map(std::move(kids[0]), std::move(kids[1]));
    case NodeKind::Filter:
      return Expr::filter(std::move(kids[0]), std::move(kids[1]));
    case NodeKind::Foldl:
      return Expr::foldl(std::move(kids[0]), std::move(kids[1]), std::move(kids[2]));
    case NodeKind::Length:
      return Expr::length(std::move(kids[0]));
    default:
      return e;
  }
}

void walk_post(const Expr& e, std::vector<Expr>& out, std::unordered_set<Expr, ExprHash>& seen) {
  for (const auto& k : e.children()) walk_post(k, out, seen);
  if (is_list_expression(e) && seen.insert(e).second) out.push_back(e);
}

void walk_top(const Expr& e, std::vector<Expr>& out, std::unordered_set<Expr, ExprHash>& seen) {
  if (is_list_expression(e)) {
    if (seen.insert(e).second) out.push_back(e);
    return;
  }
  for (const auto& k : e.children()) walk_top(k, out, seen);
}

}  // namespace

// ---- builtins ------------------------------------------------------------

std::string_view builtin_name(Builtin op) {
  return kBuiltins[static_cast<std::size_t>(op)].name;
}

std::optional<Builtin> builtin_from_name(std::string_view name) {
  for (const auto& b : kBuiltins) {
    if (b.name == name) return b.op;
  }
  return std::nullopt;
}

Arity builtin_arity(Builtin op) { return kBuiltins[static_cast<std::size_t>(op)].arity; }

bool is_commutative(Builtin op) {
  switch (op) {
    case Builtin::Add:
    case Builtin::Mul:
    case Builtin::Min:
    case Builtin::Max:
    case Builtin::Eq:
    case Builtin::And:
    case Builtin::Or:
      return true;
    default:
      return false;
  }
}

bool is_comparison(Builtin op) {
  return op == Builtin::Lt || op == Builtin::Le || op == Builtin::Gt || op == Builtin::Ge ||
         op == Builtin::Eq;
}

bool is_boolean_connective(Builtin op) {
  return op == Builtin::And || op == Builtin::Or || op == Builtin::Not;
}

// ---- Expr ----------------------------------------------------------------

Expr Expr::make(Node node) {
  std::size_t h = static_cast<std::size_t>(node.kind) * 1315423911ULL;
  std::size_t size = 1;
  switch (node.kind) {
    case NodeKind::Const:
      hash_combine(h, hash_value(node.value));
      break;
    case NodeKind::Var:
      hash_combine(h, std::hash<std::string>{}(node.name));
      break;
    case NodeKind::AccumVar:
    case NodeKind::Hole:
    case NodeKind::Unknown:
      hash_combine(h, static_cast<std::size_t>(node.index));
      break;
    case NodeKind::Func:
      hash_combine(h, static_cast<std::size_t>(node.op));
      break;
    case NodeKind::Lambda:
      for (const auto& p : node.params) hash_combine(h, std::hash<std::string>{}(p));
      break;
    default:
      break;
  }
  for (const auto& k : node.kids) {
    hash_combine(h, k.hash());
    size += k.size();
  }
  node.hash = h;
  node.size = size;
  return Expr(std::make_shared<const Node>(std::move(node)));
}

Expr Expr::constant(Rational value) {
  Node n;
  n.kind = NodeKind::Const;
  n.value = std::move(value);
  return make(std::move(n));
}

Expr Expr::constant(long value) { return constant(Rational(value)); }

Expr Expr::var(std::string name) {
  Node n;
  n.kind = NodeKind::Var;
  n.name = std::move(name);
  return make(std::move(n));
}

Expr Expr::list_var() {
  Node n;
  n.kind = NodeKind::ListVar;
  return make(std::move(n));
}

Expr Expr::snoc() {
  Node n;
  n.kind = NodeKind::Snoc;
  return make(std::move(n));
}

Expr Expr::accum(int index) {
  Node n;
  n.kind = NodeKind::AccumVar;
  n.index = index;
  return make(std::move(n));
}

Expr Expr::new_elem() {
  Node n;
  n.kind = NodeKind::NewElem;
  return make(std::move(n));
}

Expr Expr::hole(int id) {
  Node n;
  n.kind = NodeKind::Hole;
  n.index = id;
  return make(std::move(n));
}

Expr Expr::unknown(int id) {
  Node n;
  n.kind = NodeKind::Unknown;
  n.index = id;
  return make(std::move(n));
}

Expr Expr::func(Builtin op) {
  Node n;
  n.kind = NodeKind::Func;
  n.op = op;
  return make(std::move(n));
}

Expr Expr::lambda(std::vector<std::string> params, Expr body) {
  Node n;
  n.kind = NodeKind::Lambda;
  n.params = std::move(params);
  n.kids.push_back(std::move(body));
  return make(std::move(n));
}

Expr Expr::apply(Expr fn, std::vector<Expr> args) {
  Node n;
  n.kind = NodeKind::Apply;
  n.kids.reserve(args.size() + 1);
  n.kids.push_back(std::move(fn));
  for (auto& a : args) n.kids.push_back(std::move(a));
  return make(std::move(n));
}

Expr Expr::apply(Builtin op, std::vector<Expr> args) { return apply(func(op), std::move(args)); }

Expr Expr::ite(Expr cond, Expr then_branch, Expr else_branch) {
  Node n;
  n.kind = NodeKind::Ite;
  n.kids = {std::move(cond), std::move(then_branch), std::move(else_branch)};
  return make(std::move(n));
}

Expr Expr::map(Expr fn, Expr list) {
  Node n;
  n.kind = NodeKind::Map;
  n.kids = {std::move(fn), std::move(list)};
  return make(std::move(n));
}

Expr Expr::filter(Expr fn, Expr list) {
  Node n;
  n.kind = NodeKind::Filter;
  n.kids = {std::move(fn), std::move(list)};
  return make(std::move(n));
}

Expr Expr::foldl(Expr fn, Expr init, Expr list) {
  Node n;
  n.kind = NodeKind::Foldl;
  n.kids = {std::move(fn), std::move(init), std::move(list)};
  return make(std::move(n));
}

Expr Expr::length(Expr list) {
  Node n;
  n.kind = NodeKind::Length;
  n.kids = {std::move(list)};
  return make(std::move(n));
}

NodeKind Expr::kind() const { return node_->kind; }
const Rational& Expr::value() const { return node_->value; }
const std::string& Expr::name() const { return node_->name; }
int Expr::index() const { return node_->index; }
Builtin Expr::builtin() const { return node_->op; }
const std::vector<std::string>& Expr::params() const { return node_->params; }
const std::vector<Expr>& Expr::children() const { return node_->kids; }
std::size_t Expr::hash() const { return node_ ? node_->hash : 0; }
std::size_t Expr::size() const { return node_ ? node_->size : 0; }

const Expr& Expr::list() const {
  switch (kind()) {
    case NodeKind::Map:
    case NodeKind::Filter:
      return child(1);
    case NodeKind::Foldl:
      return child(2);
    case NodeKind::Length:
      return child(0);
    default:
      throw std::logic_error("Expr::list on a node without a list operand");
  }
}

std::vector<Expr> Expr::args() const {
  return std::vector<Expr>(children().begin() + 1, children().end());
}

bool Expr::operator==(const Expr& other) const {
  if (node_ == other.node_) return true;
  if (!node_ || !other.node_) return false;
  return nodes_equal(*node_, *other.node_);
}

// ---- online ----------------------------------------------------------------

OnlineExpr::OnlineExpr(Expr e) : expr_(std::move(e)) {
  if (!expr_) throw std::invalid_argument("online expression is empty");
  bool bad = contains(expr_, [](const Expr& n) {
    switch (n.kind()) {
      case NodeKind::ListVar:
      case NodeKind::Snoc:
      case NodeKind::Map:
      case NodeKind::Filter:
      case NodeKind::Foldl:
      case NodeKind::Length:
      case NodeKind::Hole:
      case NodeKind::Unknown:
        return true;
      default:
        return false;
    }
  });
  if (bad) {
    throw std::invalid_argument("online expressions may not contain list variables, list "
                                "combinators, holes or unknowns");
  }
}

void OnlineScheme::validate() const {
  if (update.empty()) throw std::invalid_argument("scheme has no accumulators");
  if (init.size() != update.size()) {
    throw std::invalid_argument("initializer width " + std::to_string(init.size()) +
                                " does not match program arity " +
                                std::to_string(update.size()));
  }
  const int n = static_cast<int>(update.size());
  for (const auto& u : update) {
    bool out_of_range = contains(u.expr(), [n](const Expr& e) {
      return e.kind() == NodeKind::AccumVar && (e.index() < 1 || e.index() > n);
    });
    if (out_of_range) throw std::invalid_argument("accumulator index out of range");
    for (const auto& v : free_vars(u.expr())) {
      if (std::find(extra_args.begin(), extra_args.end(), v) == extra_args.end()) {
        throw std::invalid_argument("unbound variable '" + v + "' in scheme");
      }
    }
  }
}

// ---- utilities -------------------------------------------------------------

bool is_list_typed(const Expr& e) {
  switch (e.kind()) {
    case NodeKind::ListVar:
    case NodeKind::Snoc:
    case NodeKind::Map:
    case NodeKind::Filter:
      return true;
    default:
      return false;
  }
}

bool is_list_expression(const Expr& e) {
  return (e.kind() == NodeKind::Foldl || e.kind() == NodeKind::Length) && is_list_typed(e.list());
}

bool is_snoc_list_expression(const Expr& e) {
  if (!is_list_expression(e)) return false;
  const Expr* l = &e.list();
  while (l->kind() == NodeKind::Map || l->kind() == NodeKind::Filter) l = &l->list();
  return l->kind() == NodeKind::Snoc;
}

std::vector<Expr> list_expressions(const OfflineProgram& p) { return list_expressions(p.body); }

std::vector<Expr> list_expressions(const Expr& e) {
  std::vector<Expr> out;
  std::unordered_set<Expr, ExprHash> seen;
  walk_post(e, out, seen);
  return out;
}

std::vector<Expr> top_level_list_expressions(const Expr& e) {
  std::vector<Expr> out;
  std::unordered_set<Expr, ExprHash> seen;
  walk_top(e, out, seen);
  return out;
}

std::set<std::string> free_vars(const Expr& e) {
  std::set<std::string> out;
  std::multiset<std::string> bound;
  collect_free(e, bound, out);
  return out;
}

bool contains(const Expr& e, const std::function<bool(const Expr&)>& pred) {
  if (pred(e)) return true;
  for (const auto& k : e.children()) {
    if (contains(k, pred)) return true;
  }
  return false;
}

Expr substitute(const Expr& e, const Expr& target, const Expr& replacement) {
  if (is_list_typed(target) != is_list_typed(replacement)) {
    throw TypeError("substitution would replace a " +
                    std::string(is_list_typed(target) ? "list" : "scalar") + " with a " +
                    std::string(is_list_typed(replacement) ? "list" : "scalar"));
  }
  if (target.kind() == NodeKind::Var) return substitute_var(e, target.name(), replacement);
  return subst_expr_impl(e, target, replacement, free_vars(target), free_vars(replacement));
}

Expr substitute_var(const Expr& e, const std::string& name, const Expr& replacement) {
  return subst_var_impl(e, name, replacement, free_vars(replacement));
}

Expr rewrite(const Expr& e, const std::function<std::optional<Expr>(const Expr&)>& fn) {
  if (auto r = fn(e)) return *r;
  if (e.children().empty()) return e;
  std::vector<Expr> kids;
  kids.reserve(e.children().size());
  bool changed = false;
  for (const auto& k : e.children()) {
    kids.push_back(rewrite(k, fn));
    changed |= !kids.back().same_node(k);
  }
  return changed ? rebuild(e, std::move(kids)) : e;
}

Expr apply_function(const Expr& fn, const std::vector<Expr>& args) {
  if (fn.kind() == NodeKind::Func) return Expr::apply(fn, args);
  if (fn.kind() != NodeKind::Lambda) throw TypeError("application of a non-function");
  const auto& params = fn.params();
  if (params.size() != args.size()) {
    throw TypeError("lambda expects " + std::to_string(params.size()) + " arguments, got " +
                    std::to_string(args.size()));
  }
  std::set<std::string> avoid = free_vars(fn.lambda_body());
  for (const auto& a : args) {
    auto fv = free_vars(a);
    avoid.insert(fv.begin(), fv.end());
  }
  avoid.insert(params.begin(), params.end());
  // Rename parameters apart first so the substitutions act simultaneously.
  Expr body = fn.lambda_body();
  std::vector<std::string> temps;
  for (const auto& p : params) {
    std::string t = fresh_name("%" + p, avoid);
    avoid.insert(t);
    body = substitute_var(body, p, Expr::var(t));
    temps.push_back(t);
  }
  for (std::size_t i = 0; i < temps.size(); ++i) body = substitute_var(body, temps[i], args[i]);
  return body;
}

Expr beta_normalize(const Expr& e) {
  return rewrite(e, [](const Expr& n) -> std::optional<Expr> {
    if (n.kind() == NodeKind::Apply && n.fn().kind() == NodeKind::Lambda) {
      std::vector<Expr> args;
      for (const auto& a : n.args()) args.push_back(beta_normalize(a));
      return beta_normalize(apply_function(n.fn(), args));
    }
    return std::nullopt;
  });
}

Expr snoc_substitute(const Expr& e) {
  return rewrite(e, [](const Expr& n) -> std::optional<Expr> {
    if (n.kind() == NodeKind::ListVar) return Expr::snoc();
    return std::nullopt;
  });
}

bool is_reserved_name(std::string_view name) {
  static const std::set<std::string, std::less<>> kKeywords = {
      "program", "lambda", "let",   "ite",  "foldl", "map",  "filter", "length",
      "scheme",  "init",   "update", "tuple", "args",  "hole", "snoc", "xs", "??"};
  if (kKeywords.contains(name)) return true;
  return builtin_from_name(name).has_value();
}

}  // namespace streamforge
