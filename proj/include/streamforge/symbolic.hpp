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


// Deductive core: snoc axioms, replacement of list terms by variables,
// variable elimination over conjunctions of polynomial equalities, and
// implicate finding.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "streamforge/formula.hpp"
#include "streamforge/rfs.hpp"

namespace streamforge {

/// lhs is a list expression over xs++[x]; rhs relates it to terms over xs.
struct Axiom {
  Expr lhs;
  Expr rhs;
};

/// The axiom for one list expression whose operand chain ends in xs++[x].
/// Returns nullopt for shapes outside the schema.
std::optional<Axiom> axiom_for(const Expr& snoc_list_expr);

/// Checks lhs = rhs on `trials` random lists (and random x and extra
/// arguments) drawn from the default value grid.
bool validate_axiom(const Axiom& a, const std::vector<std::string>& extra_args, int trials,
                    std::uint64_t seed);

struct AxiomSet {
  std::vector<Axiom> axioms;
  /// Snoc list expressions for which no valid axiom exists.
  std::vector<Expr> unsupported;
};

/// Axioms for every top-level snoc list expression in `f`, closed under the
/// right-hand sides of the axioms produced. Each axiom is validated on 50
/// random lists before it is returned.
AxiomSet instantiate_axioms(const SymFormula& f, const std::vector<std::string>& extra_args,
                            std::uint64_t seed = 0x5eed);

struct ReplacedFormula {
  PolyFormula formula;
  /// Fresh variables in order of first occurrence.
  std::vector<std::string> vars;
  /// Which list expression each fresh variable stands for.
  std::vector<std::pair<std::string, Expr>> mapping;
};

/// Replaces each structurally distinct top-level list expression by a fresh
/// variable named %v1, %v2, ... and canonicalizes both sides.
ReplacedFormula replace_list_exprs(const SymFormula& psi);

/// Existential elimination of `vars`. The result is implied by
/// exists vars. psi under the recorded side conditions; equations are
/// returned as N = 0 with N monic.
PolyFormula eliminate(const PolyFormula& psi, const std::vector<std::string>& vars);

/// Solves an equation for the box when it occurs linearly and only at top
/// level.
std::optional<SymTerm> solve_for_box(const PolyEquation& e);

struct ImplicateResult {
  /// Only the box-rooted literals, written box = E'.
  PolyFormula implicate;
  std::vector<SymTerm> solutions;
  bool incomplete = false;
  /// Stage-by-stage dump, filled when requested.
  std::string trace;
};

/// Literal order: entries 2..n, entry 1, axioms, then box = spec[xs++[x]/xs].
SymFormula implicate_formula(const Rfs& phi, const Expr& spec, const AxiomSet& axioms);

ImplicateResult find_implicate(const Rfs& phi, const Expr& spec, bool want_trace = false);

}  // namespace streamforge
