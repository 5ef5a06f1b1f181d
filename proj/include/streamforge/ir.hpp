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

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "streamforge/rational.hpp"

namespace streamforge {

enum class Builtin : std::uint8_t {
  Add, Sub, Mul, Div, Neg, Min, Max, Abs, Pow,
  Lt, Le, Gt, Ge, Eq, And, Or, Not,
};

std::string_view builtin_name(Builtin op);
std::optional<Builtin> builtin_from_name(std::string_view name);

/// Accepted argument counts; max < 0 means variadic.
struct Arity {
  int min;
  int max;
};
Arity builtin_arity(Builtin op);
bool is_commutative(Builtin op);
bool is_comparison(Builtin op);
bool is_boolean_connective(Builtin op);

enum class NodeKind : std::uint8_t {
  Const,     // rational literal
  Var,       // lambda parameter or extra program argument
  ListVar,   // the input list xs
  Snoc,      // xs ++ [x]; internal marker, never parsed
  AccumVar,  // y_i in online programs
  NewElem,   // x in online programs
  Hole,      // sketch hole
  Unknown,   // template unknown
  Func,      // builtin in function position
  Lambda,
  Apply,
  Ite,
  Map,
  Filter,
  Foldl,
  Length,
};

struct Node;

/// Immutable, structurally compared AST handle shared by the offline IR,
/// online programs, sketches and templates.
class Expr {
 public:
  Expr() = default;

  static Expr constant(Rational value);
  static Expr constant(long value);
  static Expr var(std::string name);
  static Expr list_var();
  static Expr snoc();
  static Expr accum(int index);  // 1-based
  static Expr new_elem();
  static Expr hole(int id);
  static Expr unknown(int id);
  static Expr func(Builtin op);
  static Expr lambda(std::vector<std::string> params, Expr body);
  static Expr apply(Expr fn, std::vector<Expr> args);
  static Expr apply(Builtin op, std::vector<Expr> args);
  static Expr ite(Expr cond, Expr then_branch, Expr else_branch);
  static Expr map(Expr fn, Expr list);
  static Expr filter(Expr fn, Expr list);
  static Expr foldl(Expr fn, Expr init, Expr list);
  static Expr length(Expr list);

  explicit operator bool() const { return node_ != nullptr; }

  NodeKind kind() const;
  const Rational& value() const;
  const std::string& name() const;
  int index() const;  // AccumVar index, Hole / Unknown id
  Builtin builtin() const;
  const std::vector<std::string>& params() const;
  const std::vector<Expr>& children() const;
  const Expr& child(std::size_t i) const { return children()[i]; }
  std::size_t hash() const;
  /// Number of AST nodes.
  std::size_t size() const;

  // Kind-specific views.
  const Expr& fn() const { return child(0); }                   // Apply/Map/Filter/Foldl
  const Expr& lambda_body() const { return child(0); }          // Lambda
  const Expr& list() const;                                     // Map/Filter/Foldl/Length
  const Expr& fold_init() const { return child(1); }            // Foldl
  std::vector<Expr> args() const;                               // Apply

  bool operator==(const Expr& other) const;
  bool operator!=(const Expr& other) const { return !(*this == other); }
  bool same_node(const Expr& other) const { return node_ == other.node_; }

 private:
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Expr make(Node node);

  std::shared_ptr<const Node> node_;
};

struct ExprHash {
  std::size_t operator()(const Expr& e) const { return e.hash(); }
};

struct Node {
  NodeKind kind = NodeKind::Const;
  Rational value;
  std::string name;
  int index = 0;
  Builtin op = Builtin::Add;
  std::vector<std::string> params;
  std::vector<Expr> kids;
  std::size_t hash = 0;
  std::size_t size = 1;
};

/// Batch program `λxs. body` with optional extra scalar arguments.
struct OfflineProgram {
  std::vector<std::string> extra_args;
  Expr body;

  bool operator==(const OfflineProgram& o) const {
    return extra_args == o.extra_args && body == o.body;
  }
};

/// An expression legal inside an online program: no list variable and no
/// list combinator. Construction throws std::invalid_argument otherwise.
class OnlineExpr {
 public:
  OnlineExpr() = default;
  explicit OnlineExpr(Expr e);

  const Expr& expr() const { return expr_; }
  bool operator==(const OnlineExpr& o) const { return expr_ == o.expr_; }

 private:
  Expr expr_;
};

/// Initializer constants plus the update tuple; component 1 is the output.
struct OnlineScheme {
  std::vector<std::string> extra_args;
  std::vector<Rational> init;
  std::vector<OnlineExpr> update;

  std::size_t arity() const { return update.size(); }
  /// Throws std::invalid_argument on width mismatch or out-of-range y_i.
  void validate() const;
  bool operator==(const OnlineScheme& o) const {
    return extra_args == o.extra_args && init == o.init && update == o.update;
  }
};

class TypeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---- structural utilities ------------------------------------------------

bool is_list_typed(const Expr& e);

/// A scalar list consumer (foldl or length) whose list operand is xs, xs++[x]
/// or a map/filter chain over one of them.
bool is_list_expression(const Expr& e);

/// True if the list operand chain bottoms out in xs++[x].
bool is_snoc_list_expression(const Expr& e);

/// List expressions of the program body, innermost first (children before
/// parents, left to right), structural duplicates removed.
std::vector<Expr> list_expressions(const OfflineProgram& p);

/// Same walk over an arbitrary expression, including lambda bodies.
std::vector<Expr> list_expressions(const Expr& e);

/// Outermost list expressions of `e`: the walk does not descend into a list
/// expression once one is found.
std::vector<Expr> top_level_list_expressions(const Expr& e);

std::set<std::string> free_vars(const Expr& e);

bool contains(const Expr& e, const std::function<bool(const Expr&)>& pred);

/// Capture-avoiding substitution. `target` is a Var, the list variable, or
/// any subexpression (all structural occurrences). Throws TypeError when a
/// list-typed target is replaced by a scalar or vice versa.
Expr substitute(const Expr& e, const Expr& target, const Expr& replacement);

Expr substitute_var(const Expr& e, const std::string& name, const Expr& replacement);

/// Replaces every node for which `fn` returns a value; does not descend
/// into replaced nodes.
Expr rewrite(const Expr& e, const std::function<std::optional<Expr>(const Expr&)>& fn);

/// Applies a function (builtin or lambda) to argument expressions, beta
/// reducing lambdas.
Expr apply_function(const Expr& fn, const std::vector<Expr>& args);

/// Beta-reduces every applied lambda in `e`.
Expr beta_normalize(const Expr& e);

/// e[(xs++[x])/xs]
Expr snoc_substitute(const Expr& e);

bool is_reserved_name(std::string_view name);

}  // namespace streamforge
