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


// Conjunctive formulas over mixed terms and their polynomial images.

#pragma once

#include <string>
#include <vector>

#include "streamforge/ir.hpp"
#include "streamforge/symeval.hpp"
#include "streamforge/symterm.hpp"

namespace streamforge {

/// The distinguished unknown of an implicate template, as an IR variable.
inline Expr box_var() { return Expr::var(kHoleVar); }

/// lhs = rhs, where each side is a scalar expression over y_i, x, extra
/// arguments and the box, possibly containing opaque list expressions.
struct Literal {
  Expr lhs;
  Expr rhs;
};

struct SymFormula {
  std::vector<Literal> literals;
};

struct PolyEquation {
  SymTerm lhs;
  SymTerm rhs;
};

/// Conjunction of equalities between canonical terms. An empty conjunction
/// is `true`.
struct PolyFormula {
  std::vector<PolyEquation> equations;
  SideConditions side;
  /// Set when elimination could not remove every requested variable.
  bool incomplete = false;

  bool is_true() const { return equations.empty(); }
};

std::string print(const Literal& l);
std::string print(const SymFormula& f);
std::string print(const PolyEquation& e);
std::string print(const PolyFormula& f);

}  // namespace streamforge
