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


// Exact concrete interpreter for offline programs, sketches and online schemes.

#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "streamforge/ir.hpp"

namespace streamforge {

using Tuple = std::vector<Rational>;

/// Runtime value of an expression. Booleans only arise from comparisons
/// and connectives; tuples are produced by schemes and returned as Tuple.
using Value = std::variant<Rational, bool, List>;

class EvalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using ArgBinding = std::vector<std::pair<std::string, Rational>>;

/// Everything an expression may refer to. Unset members make the
/// corresponding node an evaluation error.
struct EvalEnv {
  const List* xs = nullptr;
  const Rational* x = nullptr;            // new element, also the tail of snoc
  std::span<const Rational> accums;       // y1.. (index 1 is accums[0])
  const ArgBinding* args = nullptr;
  std::span<const Rational> holes;        // hole k is holes[k]
  std::span<const Rational> unknowns;     // ??k is unknowns[k]
};

Value eval(const Expr& e, const EvalEnv& env);

/// Evaluates a numeric expression; throws EvalError on a boolean result.
Rational eval_number(const Expr& e, const EvalEnv& env);

ArgBinding bind_args(const std::vector<std::string>& names, const std::vector<Rational>& values);

Value eval_offline(const OfflineProgram& p, const List& xs, const std::vector<Rational>& args = {});

/// One update step: returns the new accumulator tuple.
Tuple step_scheme(const OnlineScheme& s, const Tuple& state, const Rational& x, const ArgBinding& args);

/// Output trajectory: [fst(init)] for an empty stream, otherwise fst of the
/// state after each element.
List run_scheme(const OnlineScheme& s, const List& stream, const std::vector<Rational>& args = {});

/// Final accumulator tuple after consuming the stream.
Tuple final_state(const OnlineScheme& s, const List& stream, const std::vector<Rational>& args = {});

}  // namespace streamforge
