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


// Relational function signatures: which offline expression each
// accumulator stands for.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "streamforge/eval.hpp"
#include "streamforge/formula.hpp"
#include "streamforge/ir.hpp"

namespace streamforge {

struct Rfs {
  std::vector<std::string> extra_args;
  /// entries[i] is the expression for y_{i+1}; entries[0] is the body.
  std::vector<Expr> entries;

  std::size_t size() const { return entries.size(); }
  /// 1-based access.
  const Expr& at(int i) const { return entries.at(static_cast<std::size_t>(i - 1)); }
  /// Index i with entry y_i structurally equal to length(xs), if any.
  std::optional<int> length_accumulator() const;
};

Rfs construct_rfs(const OfflineProgram& p);

/// Values of every entry on the empty list. With extra arguments, each entry
/// must evaluate to a constant independent of them.
std::vector<Rational> synth_initializer(const Rfs& phi);

/// y_i := Φ[y_i](xs) for every i.
Tuple eval_rfs(const Rfs& phi, const List& xs, const ArgBinding& args);

/// The conjunction of y_i = Φ[y_i], in entry order.
SymFormula rfs_formula(const Rfs& phi);

struct PruneResult {
  OnlineScheme scheme;
  /// Original 1-based indices of the surviving accumulators.
  std::vector<int> kept;
  std::vector<int> removed;
};

/// Removes accumulators i > 1 that no other surviving component reads,
/// until a fixpoint, and renumbers the rest.
PruneResult prune_unused_detailed(const OnlineScheme& s);
OnlineScheme prune_unused(const OnlineScheme& s);

std::string print(const Rfs& phi);

}  // namespace streamforge
