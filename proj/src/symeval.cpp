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


#include "streamforge/symeval.hpp"

#include <algorithm>
#include <regex>
#include <unordered_map>

namespace streamforge {

void SideConditions::add(const SymTerm& t) {
  if (t.is_constant()) return;
  std::string k = t.key();
  for (const auto& c : nonzero) {
    if (c.key() == k) return;
  }
  nonzero.push_back(t);
}

std::string accum_var_name(int index) { return "y" + std::to_string(index); }

std::string elem_var_name(const std::string& prefix, int index) { return prefix + std::to_string(index); }

std::string unknown_var_name(int index) { return "%u" + std::to_string(index); }

namespace {

class SymEvaluator {
 public:
  SymEvaluator(const SymEnv& env, SideConditions* side) : env_(env), side_(side) {
    for (const auto& [e, v] : env.replaced) replaced_.emplace(e, v);
  }

  SymTerm scalar(const Expr& e) {
    if (!replaced_.empty()) {
      if (auto it = replaced_.find(e); it != replaced_.end()) return it->second;
    }
    switch (e.kind()) {
      case NodeKind::Const:
        return e.value();
      case NodeKind::Var:
        return lookup(e.name());
      case NodeKind::AccumVar: {
        auto i = static_cast<std::size_t>(e.index());
        if (env_.accums.empty()) return SymTerm::var(accum_var_name(e.index()));
        if (i == 0 || i > env_.accums.size()) throw SymEvalError("accumulator out of range");
        return env_.accums[i - 1];
      }
      case NodeKind::NewElem:
        return env_.x ? *env_.x : SymTerm::var("x");
      case NodeKind::Hole:
        return SymTerm::var("%h" + std::to_string(e.index()));
      case NodeKind::Unknown:
        return SymTerm::var(unknown_var_name(e.index()));
      case NodeKind::Ite:
        return sym_ite(scalar(e.child(0)), scalar(e.child(1)), scalar(e.child(2)));
      case NodeKind::Length: {
        SymList l = list(e.list());
        SymTerm n(Rational(0));
        for (const auto& g : l) n = n + g.guard;
        return n;
      }
      case NodeKind::Foldl: {
        SymTerm acc = scalar(e.fold_init());
        SymList l = list(e.list());
        for (const auto& g : l) {
          SymTerm next = call(e.fn(), {acc, g.value});
          acc = sym_ite(g.guard, next, acc);
          check_budget(acc);
        }
        return acc;
      }
      case NodeKind::Apply: {
        const Expr& fn = e.fn();
        if (fn.kind() == NodeKind::Func && fn.builtin() == Builtin::Pow) {
          SymTerm r = scalar(e.child(1)).pow(e.child(2).value().get_num().get_ui());
          check_budget(r);
          return r;
        }
        std::vector<SymTerm> args;
        for (std::size_t i = 1; i < e.children().size(); ++i) args.push_back(scalar(e.child(i)));
        return call(fn, args);
      }
      default:
        throw SymEvalError("expression is not scalar");
    }
  }

  SymList list(const Expr& e) {
    switch (e.kind()) {
      case NodeKind::ListVar:
        if (!env_.xs) throw SymEvalError("symbolic list unbound");
        return *env_.xs;
      case NodeKind::Snoc: {
        if (!env_.xs) throw SymEvalError("symbolic list unbound");
        SymList l = *env_.xs;
        l.push_back({SymTerm(Rational(1)), env_.x ? *env_.x : SymTerm::var("x")});
        return l;
      }
      case NodeKind::Map: {
        SymList l = list(e.list());
        for (auto& g : l) g.value = call(e.fn(), {g.value});
        return l;
      }
      case NodeKind::Filter: {
        SymList l = list(e.list());
        for (auto& g : l) g.guard = sym_and(g.guard, call(e.fn(), {g.value}));
        return l;
      }
      default:
        throw SymEvalError("expression is not a list");
    }
  }

 private:
  void check_budget(const SymTerm& t) const {
    if (node_count(t) > env_.node_budget) throw SymEvalError("symbolic node budget exceeded");
  }

  SymTerm lookup(const std::string& name) const {
    for (auto it = scope_.rbegin(); it != scope_.rend(); ++it) {
      if (it->first == name) return it->second;
    }
    if (auto it = env_.vars.find(name); it != env_.vars.end()) return it->second;
    return SymTerm::var(name);
  }

  SymTerm call(const Expr& fn, const std::vector<SymTerm>& args) {
    if (fn.kind() == NodeKind::Lambda) {
      if (fn.params().size() != args.size()) throw SymEvalError("lambda arity mismatch");
      std::size_t mark = scope_.size();
      for (std::size_t i = 0; i < args.size(); ++i) scope_.emplace_back(fn.params()[i], args[i]);
      SymTerm r = scalar(fn.lambda_body());
      scope_.resize(mark);
      return r;
    }
    if (fn.kind() != NodeKind::Func) throw SymEvalError("application of a non-function");
    return builtin(fn.builtin(), args);
  }

  SymTerm builtin(Builtin op, const std::vector<SymTerm>& a) {
    switch (op) {
      case Builtin::Add: {
        SymTerm s(Rational(0));
        for (const auto& v : a) s = s + v;
        return s;
      }
      case Builtin::Mul: {
        SymTerm s(Rational(1));
        for (const auto& v : a) s = s * v;
        check_budget(s);
        return s;
      }
      case Builtin::Sub: return a[0] - a[1];
      case Builtin::Div: {
        if (a[1].is_zero()) return SymTerm(Rational(0));
        if (side_) side_->add(a[1]);
        SymTerm r = a[0] / a[1];
        check_budget(r);
        return r;
      }
      case Builtin::Neg: return -a[0];
      case Builtin::Abs: return sym_abs(a[0]);
      case Builtin::Min:
      case Builtin::Max: {
        SymTerm r = a[0];
        for (std::size_t i = 1; i < a.size(); ++i) r = op == Builtin::Min ? sym_min(r, a[i]) : sym_max(r, a[i]);
        return r;
      }
      case Builtin::Pow: throw SymEvalError("pow requires a literal exponent");
      case Builtin::Lt: return sym_lt(a[0], a[1]);
      case Builtin::Le: return sym_le(a[0], a[1]);
      case Builtin::Gt: return sym_lt(a[1], a[0]);
      case Builtin::Ge: return sym_le(a[1], a[0]);
      case Builtin::Eq: return sym_eq(a[0], a[1]);
      case Builtin::And: {
        SymTerm r(Rational(1));
        for (const auto& v : a) r = sym_and(r, v);
        return r;
      }
      case Builtin::Or: {
        SymTerm r(Rational(0));
        for (const auto& v : a) r = sym_or(r, v);
        return r;
      }
      case Builtin::Not: return sym_not(a[0]);
    }
    throw SymEvalError("unreachable builtin");
  }

  const SymEnv& env_;
  SideConditions* side_;
  std::vector<std::pair<std::string, SymTerm>> scope_;
  std::unordered_map<Expr, SymTerm, ExprHash> replaced_;
};

}  // namespace

SymTerm sym_eval(const Expr& e, const SymEnv& env, SideConditions* side) {
  SymEvaluator ev(env, side);
  return ev.scalar(e);
}

SymList symbolic_list(int k, const std::string& prefix) {
  SymList l;
  for (int i = 1; i <= k; ++i) l.push_back({SymTerm(Rational(1)), SymTerm::var(elem_var_name(prefix, i))});
  return l;
}

UnrollResult unroll(const Expr& e, int k, const std::string& prefix, std::size_t node_budget) {
  UnrollResult r;
  SymList l = symbolic_list(k, prefix);
  for (int i = 1; i <= k; ++i) r.elems.push_back(elem_var_name(prefix, i));
  SymEnv env;
  env.xs = &l;
  env.node_budget = node_budget;
  r.term = sym_eval(e, env, &r.side);
  return r;
}

namespace {

std::optional<Expr> atom_expr(const Atom& a, const std::vector<std::string>& extra) {
  static const std::regex kAccum("y([1-9][0-9]*)");
  if (a->kind == AtomKind::Var) {
    if (a->name == "x") return Expr::new_elem();
    std::smatch m;
    if (std::regex_match(a->name, m, kAccum)) return Expr::accum(std::stoi(m[1].str()));
    if (std::find(extra.begin(), extra.end(), a->name) != extra.end()) return Expr::var(a->name);
    return std::nullopt;
  }
  std::vector<Expr> args;
  for (const auto& arg : a->args) {
    auto e = to_online_expr(arg, extra);
    if (!e) return std::nullopt;
    args.push_back(std::move(*e));
  }
  switch (a->kind) {
    case AtomKind::Min: return Expr::apply(Builtin::Min, std::move(args));
    case AtomKind::Max: return Expr::apply(Builtin::Max, std::move(args));
    case AtomKind::Abs: return Expr::apply(Builtin::Abs, std::move(args));
    case AtomKind::Lt:
      return Expr::ite(Expr::apply(Builtin::Lt, {args[0], Expr::constant(0L)}), Expr::constant(1L),
                       Expr::constant(0L));
    case AtomKind::Eq:
      return Expr::ite(Expr::apply(Builtin::Eq, {args[0], Expr::constant(0L)}), Expr::constant(1L),
                       Expr::constant(0L));
    case AtomKind::Var: break;
  }
  return std::nullopt;
}

Expr sum_of(std::vector<Expr> parts) {
  if (parts.size() == 1) return parts.front();
  return Expr::apply(Builtin::Add, std::move(parts));
}

}  // namespace

std::optional<Expr> to_online_expr(const Polynomial& p, const std::vector<std::string>& extra) {
  if (p.is_zero()) return Expr::constant(0L);
  std::vector<Expr> pos;
  std::vector<Expr> neg;
  for (const auto& t : p.terms()) {
    std::vector<Expr> factors;
    Rational c = abs(t.coeff);
    if (c != 1 || t.mono.is_one()) factors.push_back(Expr::constant(c));
    for (const auto& [a, e] : t.mono.factors()) {
      auto ae = atom_expr(a, extra);
      if (!ae) return std::nullopt;
      if (e == 1) factors.push_back(*ae);
      else factors.push_back(Expr::apply(Builtin::Pow, {*ae, Expr::constant(static_cast<long>(e))}));
    }
    Expr term = factors.size() == 1 ? factors.front() : Expr::apply(Builtin::Mul, std::move(factors));
    (sgn(t.coeff) < 0 ? neg : pos).push_back(std::move(term));
  }
  if (pos.empty()) return Expr::apply(Builtin::Neg, {sum_of(std::move(neg))});
  if (neg.empty()) return sum_of(std::move(pos));
  return Expr::apply(Builtin::Sub, {sum_of(std::move(pos)), sum_of(std::move(neg))});
}

std::optional<Expr> to_online_expr(const SymTerm& t, const std::vector<std::string>& extra) {
  auto n = to_online_expr(t.num(), extra);
  if (!n) return std::nullopt;
  if (t.is_polynomial()) return n;
  auto d = to_online_expr(t.den(), extra);
  if (!d) return std::nullopt;
  return Expr::apply(Builtin::Div, {*n, *d});
}

}  // namespace streamforge
