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


#include "streamforge/eval.hpp"

#include <algorithm>

namespace streamforge {

namespace {

using Scope = std::vector<std::pair<const std::string*, Rational>>;

class Evaluator {
 public:
  explicit Evaluator(const EvalEnv& env) : env_(env) {}

  std::variant<Rational, bool> scalar(const Expr& e) {
    switch (e.kind()) {
      case NodeKind::Const:
        return e.value();
      case NodeKind::Var:
        return lookup(e.name());
      case NodeKind::AccumVar: {
        auto i = static_cast<std::size_t>(e.index());
        if (i == 0 || i > env_.accums.size()) throw EvalError("accumulator y" + std::to_string(i) + " unbound");
        return env_.accums[i - 1];
      }
      case NodeKind::NewElem:
        if (!env_.x) throw EvalError("new element x unbound");
        return *env_.x;
      case NodeKind::Hole: {
        auto i = static_cast<std::size_t>(e.index());
        if (i >= env_.holes.size()) throw EvalError("hole " + std::to_string(i) + " unbound");
        return env_.holes[i];
      }
      case NodeKind::Unknown: {
        auto i = static_cast<std::size_t>(e.index());
        if (i >= env_.unknowns.size()) throw EvalError("unknown ??" + std::to_string(i) + " unbound");
        return env_.unknowns[i];
      }
      case NodeKind::Ite: {
        bool c = boolean(e.child(0));
        return scalar(c ? e.child(1) : e.child(2));
      }
      case NodeKind::Length:
        return Rational(static_cast<long>(list(e.list()).size()));
      case NodeKind::Foldl: {
        Rational acc = number(e.fold_init());
        List items = list(e.list());
        for (const auto& item : items) acc = as_number(call(e.fn(), {acc, item}));
        return acc;
      }
      case NodeKind::Apply: {
        const Expr& fn = e.fn();
        if (fn.kind() == NodeKind::Func && fn.builtin() == Builtin::Pow) {
          Rational base = number(e.child(1));
          return pow(base, e.child(2).value().get_num().get_ui());
        }
        std::vector<std::variant<Rational, bool>> args;
        args.reserve(e.children().size() - 1);
        for (std::size_t i = 1; i < e.children().size(); ++i) args.push_back(scalar(e.child(i)));
        return call(fn, args);
      }
      default:
        throw EvalError("expression is not scalar: " + std::string(kind_name(e)));
    }
  }

  List list(const Expr& e) {
    switch (e.kind()) {
      case NodeKind::ListVar:
        if (!env_.xs) throw EvalError("list xs unbound");
        return *env_.xs;
      case NodeKind::Snoc: {
        if (!env_.xs || !env_.x) throw EvalError("xs++[x] needs both xs and x");
        List out = *env_.xs;
        out.push_back(*env_.x);
        return out;
      }
      case NodeKind::Map: {
        List in = list(e.list());
        List out;
        out.reserve(in.size());
        for (const auto& v : in) out.push_back(as_number(call(e.fn(), {v})));
        return out;
      }
      case NodeKind::Filter: {
        List in = list(e.list());
        List out;
        for (const auto& v : in) {
          auto r = call(e.fn(), {v});
          if (!std::holds_alternative<bool>(r)) throw EvalError("filter predicate returned a number");
          if (std::get<bool>(r)) out.push_back(v);
        }
        return out;
      }
      default:
        throw EvalError("expression is not a list");
    }
  }

 private:
  static const char* kind_name(const Expr& e) {
    switch (e.kind()) {
      case NodeKind::Lambda: return "lambda";
      case NodeKind::Func: return "builtin";
      default: return "list";
    }
  }

  static Rational as_number(const std::variant<Rational, bool>& v) {
    if (!std::holds_alternative<Rational>(v)) throw EvalError("boolean used where a number is expected");
    return std::get<Rational>(v);
  }

  static bool as_bool(const std::variant<Rational, bool>& v) {
    if (!std::holds_alternative<bool>(v)) throw EvalError("number used where a boolean is expected");
    return std::get<bool>(v);
  }

  Rational number(const Expr& e) { return as_number(scalar(e)); }
  bool boolean(const Expr& e) { return as_bool(scalar(e)); }

  Rational lookup(const std::string& name) const {
    for (auto it = scope_.rbegin(); it != scope_.rend(); ++it) {
      if (*it->first == name) return it->second;
    }
    if (env_.args) {
      for (const auto& [n, v] : *env_.args) {
        if (n == name) return v;
      }
    }
    throw EvalError("unbound variable '" + name + "'");
  }

  std::variant<Rational, bool> call(const Expr& fn, const std::vector<std::variant<Rational, bool>>& args) {
    if (fn.kind() == NodeKind::Lambda) {
      if (fn.params().size() != args.size()) throw EvalError("lambda arity mismatch");
      std::size_t mark = scope_.size();
      for (std::size_t i = 0; i < args.size(); ++i) scope_.emplace_back(&fn.params()[i], as_number(args[i]));
      auto r = scalar(fn.lambda_body());
      scope_.resize(mark);
      return r;
    }
    if (fn.kind() != NodeKind::Func) throw EvalError("application of a non-function");
    return apply_builtin(fn.builtin(), args);
  }

  static std::variant<Rational, bool> apply_builtin(Builtin op,
                                                    const std::vector<std::variant<Rational, bool>>& a) {
    Arity ar = builtin_arity(op);
    int n = static_cast<int>(a.size());
    if (n < ar.min || (ar.max >= 0 && n > ar.max)) {
      throw EvalError("builtin '" + std::string(builtin_name(op)) + "' arity mismatch");
    }
    switch (op) {
      case Builtin::Add: {
        Rational s = 0;
        for (const auto& v : a) s += as_number(v);
        return s;
      }
      case Builtin::Mul: {
        Rational s = 1;
        for (const auto& v : a) s *= as_number(v);
        return s;
      }
      case Builtin::Sub:
        return Rational(as_number(a[0]) - as_number(a[1]));
      case Builtin::Div:
        return safe_div(as_number(a[0]), as_number(a[1]));
      case Builtin::Neg:
        return Rational(-as_number(a[0]));
      case Builtin::Abs:
        return Rational(abs(as_number(a[0])));
      case Builtin::Min:
      case Builtin::Max: {
        Rational best = as_number(a[0]);
        for (std::size_t i = 1; i < a.size(); ++i) {
          Rational v = as_number(a[i]);
          if (op == Builtin::Min ? v < best : v > best) best = v;
        }
        return best;
      }
      case Builtin::Pow:
        throw EvalError("pow requires a literal exponent");
      case Builtin::Lt: return as_number(a[0]) < as_number(a[1]);
      case Builtin::Le: return as_number(a[0]) <= as_number(a[1]);
      case Builtin::Gt: return as_number(a[0]) > as_number(a[1]);
      case Builtin::Ge: return as_number(a[0]) >= as_number(a[1]);
      case Builtin::Eq: return as_number(a[0]) == as_number(a[1]);
      case Builtin::And:
        return std::all_of(a.begin(), a.end(), [](const auto& v) { return as_bool(v); });
      case Builtin::Or:
        return std::any_of(a.begin(), a.end(), [](const auto& v) { return as_bool(v); });
      case Builtin::Not:
        return !as_bool(a[0]);
    }
    throw EvalError("unreachable builtin");
  }

  const EvalEnv& env_;
  Scope scope_;
};

}  // namespace

Value eval(const Expr& e, const EvalEnv& env) {
  Evaluator ev(env);
  if (is_list_typed(e)) return ev.list(e);
  auto v = ev.scalar(e);
  if (std::holds_alternative<bool>(v)) return std::get<bool>(v);
  return std::get<Rational>(v);
}

Rational eval_number(const Expr& e, const EvalEnv& env) {
  Evaluator ev(env);
  auto v = ev.scalar(e);
  if (!std::holds_alternative<Rational>(v)) throw EvalError("expression evaluated to a boolean");
  return std::get<Rational>(std::move(v));
}

ArgBinding bind_args(const std::vector<std::string>& names, const std::vector<Rational>& values) {
  if (names.size() != values.size()) {
    throw EvalError("expected " + std::to_string(names.size()) + " extra argument(s), got " +
                    std::to_string(values.size()));
  }
  ArgBinding out;
  for (std::size_t i = 0; i < names.size(); ++i) out.emplace_back(names[i], values[i]);
  return out;
}

Value eval_offline(const OfflineProgram& p, const List& xs, const std::vector<Rational>& args) {
  ArgBinding bound = bind_args(p.extra_args, args);
  EvalEnv env;
  env.xs = &xs;
  env.args = &bound;
  return eval(p.body, env);
}

Tuple step_scheme(const OnlineScheme& s, const Tuple& state, const Rational& x, const ArgBinding& args) {
  EvalEnv env;
  env.x = &x;
  env.accums = state;
  env.args = &args;
  Tuple next;
  next.reserve(s.update.size());
  for (const auto& u : s.update) next.push_back(eval_number(u.expr(), env));
  if (next.size() != state.size()) throw EvalError("update produced a tuple of the wrong width");
  return next;
}

Tuple final_state(const OnlineScheme& s, const List& stream, const std::vector<Rational>& args) {
  if (s.init.size() != s.update.size()) throw EvalError("initializer width does not match arity");
  ArgBinding bound = bind_args(s.extra_args, args);
  Tuple state = s.init;
  for (const auto& x : stream) state = step_scheme(s, state, x, bound);
  return state;
}

List run_scheme(const OnlineScheme& s, const List& stream, const std::vector<Rational>& args) {
  if (s.init.empty() || s.init.size() != s.update.size()) {
    throw EvalError("initializer width does not match arity");
  }
  ArgBinding bound = bind_args(s.extra_args, args);
  if (stream.empty()) return {s.init.front()};
  List out;
  out.reserve(stream.size());
  Tuple state = s.init;
  for (const auto& x : stream) {
    state = step_scheme(s, state, x, bound);
    out.push_back(state.front());
  }
  return out;
}

}  // namespace streamforge
