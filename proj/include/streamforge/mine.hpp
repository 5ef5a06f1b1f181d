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


// Template mining: unroll the signature and the target over a symbolic list
// of fixed length, eliminate the elements, and turn constants of the
// residue into unknowns.

#pragma once

#include <string>
#include <vector>

#include "streamforge/ir.hpp"
#include "streamforge/rfs.hpp"
#include "streamforge/symterm.hpp"

namespace streamforge {

struct TemplateTerm {
  Monomial mono;
  /// Fixed coefficient, or the sign (+1 / -1) in front of the unknown.
  Rational coeff;
  /// 1-based unknown id, 0 for a fixed term.
  int unknown = 0;
};

/// (sum of num terms) / (sum of den terms); an empty den means 1.
struct Template {
  std::vector<TemplateTerm> num;
  std::vector<TemplateTerm> den;
  int unknown_count = 0;
  /// Same template with (?? i) nodes.
  Expr expr;
  /// The residue this template was mined from.
  SymTerm source;

  bool exact() const { return unknown_count == 0; }
  /// Unknown k replaced by fills[k-1].
  Expr instantiate(const std::vector<Expr>& fills) const;
  SymTerm instantiate(const std::vector<SymTerm>& values) const;
  /// Symbolic form, unknown k as the variable %u<k>.
  SymTerm as_symterm() const;
};

/// Scales to coprime integer coefficients, then replaces every coefficient
/// other than +-1 on a non-constant monomial, every constant term and a
/// constant denominator other than 1 by a fresh unknown. Factors %u<k>
/// already present are treated as unknowns, so templatize is idempotent.
Template templatize(const SymTerm& t, const std::vector<std::string>& extra_args);

struct MineResult {
  std::vector<Template> templates;
  std::vector<SymTerm> residues;
  /// Why mining produced nothing, when it did not.
  std::string failure;
};

MineResult mine_expressions(const Rfs& phi, const Expr& spec, int k);

/// mine_expressions at k, and once more at k+1 when nothing was found.
MineResult mine_with_retry(const Rfs& phi, const Expr& spec, int k);

std::string print(const Template& t);

}  // namespace streamforge
