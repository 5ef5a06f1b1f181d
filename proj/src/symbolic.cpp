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


#include "streamforge/symbolic.hpp"

#include <algorithm>
#include <unordered_set>

#include "streamforge/eval.hpp"
#include "streamforge/sampling.hpp"
#include "streamforge/symeval.hpp"
#include "streamforge/syntax.hpp"

namespace streamforge {

std::string print(const Literal& l) { return "(= " + print(l.lhs) + " " + print(l.rhs) + ")"; }

std::string print(const SymFormula& f) {
  if (f.literals.empty()) return "true";
  std::string out = "(and";
  for (const auto& l : f.literals) out += "\n  " + print(l);
  return out + ")";
}

std::string print(const PolyEquation& e) { return "(= " + e.lhs.to_string() + " " + e.rhs.to_string() + ")"; }

std::string print(const PolyFormula& f) {
  if (f.equations.empty()) return "true";
  std::string out = "(and";
  for (const auto& e : f.equations) out += "\n  " + print(e);
  return out + ")";
}

// ---- axioms ---------------------------------------------------------------------

std::optional<Axiom> axiom_for(const Expr& e) {
  if (!is_snoc_list_expression(e)) return std::nullopt;
  std::vector<const Expr*> layers;  // outermost first
  const Expr* l = &e.list();
  while (l->kind() == NodeKind::Map || l->kind() == NodeKind::Filter) {
    layers.push_back(l);
    l = &l->list();
  }
  Expr prefix = Expr::list_var();
  Expr last = Expr::new_elem();
  std::optional<Expr> guard;
  for (auto it = layers.rbegin(); it != layers.rend(); ++it) {
    const Expr& layer = **it;
    if (layer.kind() == NodeKind::Map) {
      prefix = Expr::map(layer.fn(), prefix);
      last = beta_normalize(apply_function(layer.fn(), {last}));
    } else {
      prefix = Expr::filter(layer.fn(), prefix);
      Expr g = beta_normalize(apply_function(layer.fn(), {last}));
      guard = guard ? Expr::apply(Builtin::And, {*guard, g}) : g;
    }
  }
  Axiom a;
  a.lhs = e;
  if (e.kind() == NodeKind::Length) {
    Expr before = Expr::length(prefix);
    Expr step = guard ? Expr::ite(*guard, Expr::constant(1L), Expr::constant(0L)) : Expr::constant(1L);
    a.rhs = Expr::apply(Builtin::Add, {before, step});
    return a;
  }
  Expr before = Expr::foldl(e.fn(), e.fold_init(), prefix);
  Expr next = beta_normalize(apply_function(e.fn(), {before, last}));
  a.rhs = guard ? Expr::ite(*guard, next, before) : next;
  return a;
}

bool validate_axiom(const Axiom& a, const std::vector<std::string>& extra_args, int trials, std::uint64_t seed) {
  Rng rng(seed);
  for (int t = 0; t < trials; ++t) {
    List xs = sample_list(rng, 0, 8);
    Rational x = sample_value(rng);
    ArgBinding args;
    for (const auto& n : extra_args) args.emplace_back(n, sample_value(rng));
    EvalEnv env;
    env.xs = &xs;
    env.x = &x;
    env.args = &args;
    try {
      if (eval_number(a.lhs, env) != eval_number(a.rhs, env)) return false;
    } catch (const EvalError&) {
      return false;
    }
  }
  return true;
}

namespace {

void top_level_snoc_terms(const Expr& e, std::vector<Expr>& out) {
  for (const auto& t : top_level_list_expressions(e)) {
    if (is_snoc_list_expression(t) && std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
  }
}

}  // namespace

AxiomSet instantiate_axioms(const SymFormula& f, const std::vector<std::string>& extra_args, std::uint64_t seed) {
  std::vector<Expr> work;
  for (const auto& l : f.literals) {
    top_level_snoc_terms(l.lhs, work);
    top_level_snoc_terms(l.rhs, work);
  }
  AxiomSet out;
  for (std::size_t i = 0; i < work.size(); ++i) {
    Expr t = work[i];
    auto a = axiom_for(t);
    if (!a || !validate_axiom(*a, extra_args, 50, derive_seed(seed, i))) {
      out.unsupported.push_back(t);
      continue;
    }
    top_level_snoc_terms(a->rhs, work);
    out.axioms.push_back(std::move(*a));
  }
  return out;
}

// ---- replacement ----------------------------------------------------------------

ReplacedFormula replace_list_exprs(const SymFormula& psi) {
  ReplacedFormula r;
  SymEnv env;
  auto assign = [&](const Expr& side) {
    for (const auto& t : top_level_list_expressions(side)) {
      bool known = std::any_of(r.mapping.begin(), r.mapping.end(), [&](const auto& m) { return m.second == t; });
      if (known) continue;
      std::string name = "%v" + std::to_string(r.mapping.size() + 1);
      r.mapping.emplace_back(name, t);
      r.vars.push_back(name);
      env.replaced.emplace_back(t, SymTerm::var(name));
    }
  };
  for (const auto& l : psi.literals) {
    assign(l.lhs);
    assign(l.rhs);
  }
  for (const auto& l : psi.literals) {
    SymTerm lhs = sym_eval(l.lhs, env, &r.formula.side);
    SymTerm rhs = sym_eval(l.rhs, env, &r.formula.side);
    r.formula.equations.push_back({lhs, rhs});
  }
  return r;
}

// ---- elimination ---------------------------------------------------------------

namespace {

bool natural_less(const std::string& a, const std::string& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

bool inside_atom(const Polynomial& p, const std::string& v) {
  for (const auto& a : p.atoms()) {
    if (a->kind != AtomKind::Var && a->vars.count(v)) return true;
  }
  return false;
}

Polynomial numerator_of(const SymTerm& t) { return t.num().monic(); }

Polynomial row_of(const PolyEquation& e) { return numerator_of(e.lhs - e.rhs); }

/// Linear solve of p = 0 for top-level variable v.
std::optional<SymTerm> solve_linear(const Polynomial& p, const std::string& v, SideConditions& side) {
  if (inside_atom(p, v)) return std::nullopt;
  Atom a = make_var_atom(v);
  if (p.degree_in(a) != 1) return std::nullopt;
  auto coeffs = p.coefficients_in(a);
  const Polynomial& c1 = coeffs.at(1);
  Polynomial c0 = coeffs.count(0) ? coeffs.at(0) : Polynomial();
  side.add(SymTerm(c1));
  return SymTerm::fraction(-c0, c1);
}

using Columns = std::map<Monomial, Polynomial>;

Columns split_columns(const Polynomial& p, const std::set<std::string>& vars) {
  std::map<Monomial, std::vector<Term>> parts;
  for (const auto& t : p.terms()) {
    Monomial vpart;
    Monomial rest;
    for (const auto& [a, e] : t.mono.factors()) {
      if (a->kind == AtomKind::Var && vars.count(a->name)) vpart = vpart * Monomial(a, e);
      else rest = rest * Monomial(a, e);
    }
    parts[vpart].push_back({rest, t.coeff});
  }
  Columns out;
  for (auto& [m, ts] : parts) out.emplace(m, Polynomial::from_terms(std::move(ts)));
  return out;
}

Polynomial join_columns(const Columns& c) {
  Polynomial p;
  for (const auto& [m, coeff] : c) p = p + coeff.times(m, Rational(1));
  return p;
}

}  // namespace

PolyFormula eliminate(const PolyFormula& psi, const std::vector<std::string>& vars_in) {
  PolyFormula out;
  out.side = psi.side;
  std::vector<Polynomial> rows;
  for (const auto& e : psi.equations) {
    Polynomial r = row_of(e);
    if (!r.is_zero()) rows.push_back(std::move(r));
  }
  std::vector<std::string> vars = vars_in;

  // Phase 1: substitution, fewest occurrences first.
  for (;;) {
    std::vector<std::pair<std::size_t, std::string>> order;
    for (const auto& v : vars) {
      std::size_t n = static_cast<std::size_t>(
          std::count_if(rows.begin(), rows.end(), [&](const Polynomial& r) { return r.vars().count(v) > 0; }));
      if (n) order.emplace_back(n, v);
    }
    vars.clear();
    for (const auto& [n, v] : order) vars.push_back(v);
    if (order.empty()) break;
    std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
      if (a.first != b.first) return a.first < b.first;
      return natural_less(a.second, b.second);
    });
    bool progressed = false;
    for (const auto& [n, v] : order) {
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (!rows[i].vars().count(v)) continue;
        auto value = solve_linear(rows[i], v, out.side);
        if (!value) continue;
        rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(i));
        std::vector<Polynomial> next;
        for (auto& r : rows) {
          if (r.vars().count(v)) {
            Polynomial s = numerator_of(SymTerm(r).substitute(v, *value));
            if (!s.is_zero()) next.push_back(std::move(s));
          } else {
            next.push_back(std::move(r));
          }
        }
        rows = std::move(next);
        vars.erase(std::find(vars.begin(), vars.end(), v));
        progressed = true;
        break;
      }
      if (progressed) break;
    }
    if (!progressed) break;
  }

  std::set<std::string> left(vars.begin(), vars.end());
  auto mentions_left = [&](const Polynomial& r) {
    auto vs = r.vars();
    return std::any_of(left.begin(), left.end(), [&](const std::string& v) { return vs.count(v) > 0; });
  };

  if (!left.empty()) {
    out.incomplete = true;
    // Phase 2: treat each monomial in the remaining variables as an unknown
    // and run fraction-free Gaussian elimination over the usable rows.
    std::vector<Polynomial> kept;
    std::vector<Columns> matrix;
    for (auto& r : rows) {
      if (!mentions_left(r)) {
        kept.push_back(std::move(r));
        continue;
      }
      bool usable = std::none_of(left.begin(), left.end(), [&](const std::string& v) { return inside_atom(r, v); });
      if (usable) matrix.push_back(split_columns(r, left));
    }
    const Monomial one;
    for (std::size_t i = 0; i < matrix.size(); ++i) {
      // Pivot: the largest monomial that actually involves the variables.
      auto pivot = std::find_if(matrix[i].rbegin(), matrix[i].rend(),
                                [&](const auto& kv) { return !kv.first.is_one() && !kv.second.is_zero(); });
      if (pivot == matrix[i].rend()) continue;
      Monomial col = pivot->first;
      Polynomial ci = pivot->second;
      for (std::size_t j = i + 1; j < matrix.size(); ++j) {
        auto it = matrix[j].find(col);
        if (it == matrix[j].end() || it->second.is_zero()) continue;
        Polynomial cj = it->second;
        Polynomial g = gcd(ci, cj);
        Polynomial fi = *exact_divide(cj, g);
        Polynomial fj = *exact_divide(ci, g);
        Polynomial combined = join_columns(matrix[j]) * fj - join_columns(matrix[i]) * fi;
        matrix[j] = split_columns(combined.reduced().monic(), left);
      }
      matrix[i].clear();
    }
    for (const auto& row : matrix) {
      if (row.empty()) continue;
      Polynomial p = join_columns(row);
      if (!p.is_zero() && !mentions_left(p)) kept.push_back(p.monic());
    }
    rows = std::move(kept);
  }

  for (const auto& r : rows) {
    if (r.is_zero() || mentions_left(r)) continue;
    out.equations.push_back({SymTerm(r), SymTerm(Rational(0))});
  }
  return out;
}

std::optional<SymTerm> solve_for_box(const PolyEquation& e) {
  Polynomial p = numerator_of(e.lhs - e.rhs);
  SideConditions side;
  return solve_linear(p, kHoleVar, side);
}

// ---- implicates ------------------------------------------------------------------

SymFormula implicate_formula(const Rfs& phi, const Expr& spec, const AxiomSet& axioms) {
  SymFormula base = rfs_formula(phi);
  SymFormula f;
  for (std::size_t i = 1; i < base.literals.size(); ++i) f.literals.push_back(base.literals[i]);
  f.literals.push_back(base.literals[0]);
  for (const auto& a : axioms.axioms) f.literals.push_back({a.lhs, a.rhs});
  f.literals.push_back({box_var(), snoc_substitute(spec)});
  return f;
}

ImplicateResult find_implicate(const Rfs& phi, const Expr& spec, bool want_trace) {
  ImplicateResult r;
  SymFormula skeleton = rfs_formula(phi);
  skeleton.literals.push_back({box_var(), snoc_substitute(spec)});
  AxiomSet axioms = instantiate_axioms(skeleton, phi.extra_args);
  SymFormula psi = implicate_formula(phi, spec, axioms);
  ReplacedFormula replaced = replace_list_exprs(psi);
  PolyFormula residue = eliminate(replaced.formula, replaced.vars);
  r.incomplete = residue.incomplete || !axioms.unsupported.empty();
  r.implicate.side = residue.side;
  r.implicate.incomplete = r.incomplete;
  for (const auto& eq : residue.equations) {
    auto s = solve_for_box(eq);
    if (!s) continue;
    r.implicate.equations.push_back({SymTerm::var(kHoleVar), *s});
    r.solutions.push_back(*s);
  }
  if (want_trace) {
    std::string t = ";; axioms\n";
    for (const auto& a : axioms.axioms) t += print(Literal{a.lhs, a.rhs}) + "\n";
    for (const auto& u : axioms.unsupported) t += ";; unsupported: " + print(u) + "\n";
    t += ";; psi\n" + print(psi) + "\n;; psi'\n";
    for (const auto& [v, e] : replaced.mapping) t += ";; " + v + " := " + print(e) + "\n";
    t += print(replaced.formula) + "\n;; residue\n" + print(residue) + "\n;; implicate\n" + print(r.implicate);
    r.trace = std::move(t);
  }
  return r;
}

}  // namespace streamforge
