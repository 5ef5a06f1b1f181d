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


// Symbolic evaluation of IR expressions into SymTerms, unrolling list
// combinators over symbolic lists of fixed length, and the reverse
// translation from SymTerms back to online expressions.

#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "streamforge/ir.hpp"
#include "streamforge/symterm.hpp"

namespace streamforge {

class SymEvalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Element of a symbolic list; `guard` is a 0/1 indicator that is 1 when
/// the element survived every filter.
struct GuardedElem {
  SymTerm guard;
  SymTerm value;
};
using SymList = std::vector<GuardedElem>;

/// Nonzero-denominator side conditions collected during evaluation.
struct SideConditions {
  std::vector<SymTerm> nonzero;
  void add(const SymTerm& t);
};

struct SymEnv {
  const SymList* xs = nullptr;
  const SymTerm* x = nullptr;
  /// Values for accumulators y1.. (index 1 is accums[0]); when empty,
  /// y_i evaluates to the variable "y<i>".
  std::vector<SymTerm> accums;
  /// Overrides for named variables; unbound names become free symbols.
  std::map<std::string, SymTerm> vars;
  /// Values for whole subexpressions, looked up before evaluation.
  std::vector<std::pair<Expr, SymTerm>> replaced;
  std::size_t node_budget = 10000;
};

inline constexpr const char* kHoleVar = "%hole";

std::string accum_var_name(int index);
std::string elem_var_name(const std::string& prefix, int index);
std::string unknown_var_name(int index);

SymTerm sym_eval(const Expr& e, const SymEnv& env, SideConditions* side = nullptr);

/// [prefix1 .. prefixk], all guards 1.
SymList symbolic_list(int k, const std::string& prefix);

struct UnrollResult {
  SymTerm term;
  std::vector<std::string> elems;
  SideConditions side;
};

/// Evaluates `e` with xs bound to a symbolic list of length k. A snoc marker
/// appends the variable "x".
UnrollResult unroll(const Expr& e, int k, const std::string& prefix = "%x",
                    std::size_t node_budget = 10000);

/// Translates a SymTerm over y<i>, x and extra argument names into an online
/// expression. Returns nullopt when another variable occurs.
std::optional<Expr> to_online_expr(const SymTerm& t, const std::vector<std::string>& extra_args);

/// Translation of a polynomial only.
std::optional<Expr> to_online_expr(const Polynomial& p, const std::vector<std::string>& extra_args);

}  // namespace streamforge
