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


#include "streamforge/mine.hpp"

#include <algorithm>
#include <optional>

#include "streamforge/symbolic.hpp"
#include "streamforge/symeval.hpp"
#include "streamforge/syntax.hpp"

namespace streamforge {

namespace {

bool is_unknown_atom(const Atom& a) { return a->kind == AtomKind::Var && a->name.rfind("%u", 0) == 0; }

Monomial strip_unknowns(const Monomial& m, bool& had) {
  Monomial out;
  had = false;
  for (const auto& [a, e] : m.factors()) {
    if (is_unknown_atom(a)) {
      had = true;
      continue;
    }
    out = out * Monomial(a, e);
  }
  return out;
}

mpz_class lcm_of_denominators(const Polynomial& a, const Polynomial& b) {
  mpz_class l = 1;
  for (const auto* p : {&a, &b}) {
    for (const auto& t : p->terms()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.coeff.get_den_mpz_t());
  }
  return l;
}

mpz_class gcd_of_numerators(const Polynomial& a, const Polynomial& b) {
  mpz_class g = 0;
  for (const auto* p : {&a, &b}) {
    for (const auto& t : p->terms()) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coeff.get_num_mpz_t());
  }
  return g == 0 ? mpz_class(1) : g;
}

struct Pending {
  Monomial mono;
  Rational coeff;
  bool unknown;
};

std::vector<Pending> classify(const Polynomial& p) {
  std::vector<Pending> out;
  for (const auto& t : p.terms()) {
    bool had = false;
    Monomial m = strip_unknowns(t.mono, had);
    bool unknown = had || m.is_one() || abs(t.coeff) != 1;
    out.push_back({m, unknown ? Rational(sgn(t.coeff)) : t.coeff, unknown});
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const Pending& a, const Pending& b) { return Monomial::compare(a.mono, b.mono) > 0; });
  return out;
}

std::optional<Expr> monomial_expr(const Monomial& m, const std::vector<std::string>& extra) {
  Polynomial p = Polynomial::from_terms({{m, Rational(1)}});
  return to_online_expr(p, extra);
}

Expr side_expr(const std::vector<TemplateTerm>& terms, const std::vector<std::string>& extra) {
  std::vector<Expr> pos;
  std::vector<Expr> neg;
  for (const auto& t : terms) {
    std::vector<Expr> factors;
    Rational c = abs(t.coeff);
    if (t.unknown) factors.push_back(Expr::unknown(t.unknown));
    else if (c != 1 || t.mono.is_one()) factors.push_back(Expr::constant(c));
    if (!t.mono.is_one()) {
      auto me = monomial_expr(t.mono, extra);
      if (!me) throw std::invalid_argument("template mentions a non-online variable");
      bool product = me->kind() == NodeKind::Apply && me->fn().kind() == NodeKind::Func &&
                     me->fn().builtin() == Builtin::Mul;
      if (product) {
        for (const auto& a : me->args()) factors.push_back(a);
      } else {
        factors.push_back(*me);
      }
    }
    Expr e = factors.size() == 1 ? factors.front() : Expr::apply(Builtin::Mul, std::move(factors));
    (sgn(t.coeff) < 0 ? neg : pos).push_back(std::move(e));
  }
  auto sum = [](std::vector<Expr> v) { return v.size() == 1 ? v.front() : Expr::apply(Builtin::Add, std::move(v)); };
  if (pos.empty() && neg.empty()) return Expr::constant(0L);
  if (pos.empty()) return Expr::apply(Builtin::Neg, {sum(std::move(neg))});
  if (neg.empty()) return sum(std::move(pos));
  return Expr::apply(Builtin::Sub, {sum(std::move(pos)), sum(std::move(neg))});
}

SymTerm side_symterm(const std::vector<TemplateTerm>& terms, const std::vector<SymTerm>* values) {
  SymTerm s(Rational(0));
  for (const auto& t : terms) {
    SymTerm term = SymTerm(Polynomial::from_terms({{t.mono, t.coeff}}));
    if (t.unknown) {
      term = term * (values ? (*values)[static_cast<std::size_t>(t.unknown - 1)]
                            : SymTerm::var(unknown_var_name(t.unknown)));
    }
    s = s + term;
  }
  return s;
}

}  // namespace

Expr Template::instantiate(const std::vector<Expr>& fills) const {
  return rewrite(expr, [&](const Expr& n) -> std::optional<Expr> {
    if (n.kind() != NodeKind::Unknown) return std::nullopt;
    return fills.at(static_cast<std::size_t>(n.index() - 1));
  });
}

SymTerm Template::instantiate(const std::vector<SymTerm>& values) const {
  SymTerm n = side_symterm(num, &values);
  if (den.empty()) return n;
  return n / side_symterm(den, &values);
}

SymTerm Template::as_symterm() const {
  SymTerm n = side_symterm(num, nullptr);
  if (den.empty()) return n;
  return n / side_symterm(den, nullptr);
}

Template templatize(const SymTerm& t, const std::vector<std::string>& extra_args) {
  Polynomial n = t.num();
  Polynomial d = t.den();
  mpz_class l = lcm_of_denominators(n, d);
  n = n.scaled(Rational(l));
  d = d.scaled(Rational(l));
  mpz_class g = gcd_of_numerators(n, d);
  n = n.scaled(Rational(1) / Rational(g));
  d = d.scaled(Rational(1) / Rational(g));

  Template out;
  out.source = t;
  int next = 0;
  for (const auto& p : classify(n)) {
    out.num.push_back({p.mono, p.coeff, p.unknown ? ++next : 0});
  }
  bool trivial_den = d.is_constant() && d.constant_value() == 1;
  if (!trivial_den) {
    for (const auto& p : classify(d)) out.den.push_back({p.mono, p.coeff, p.unknown ? ++next : 0});
  }
  out.unknown_count = next;
  Expr num_e = side_expr(out.num, extra_args);
  out.expr = out.den.empty() ? num_e : Expr::apply(Builtin::Div, {num_e, side_expr(out.den, extra_args)});
  return out;
}

MineResult mine_expressions(const Rfs& phi, const Expr& spec, int k) {
  MineResult r;
  try {
    SymList xs = symbolic_list(k, "%x");
    SymEnv env;
    env.xs = &xs;
    PolyFormula f;
    auto entry = [&](std::size_t i) {
      SymTerm v = sym_eval(phi.entries[i], env, &f.side);
      f.equations.push_back({SymTerm::var(accum_var_name(static_cast<int>(i + 1))), v});
    };
    for (std::size_t i = 1; i < phi.entries.size(); ++i) entry(i);
    entry(0);
    SymTerm target = sym_eval(snoc_substitute(spec), env, &f.side);
    f.equations.push_back({SymTerm::var(kHoleVar), target});
    std::vector<std::string> vars;
    for (int i = 1; i <= k; ++i) vars.push_back(elem_var_name("%x", i));
    PolyFormula residue = eliminate(f, vars);
    for (const auto& eq : residue.equations) {
      auto s = solve_for_box(eq);
      if (!s) continue;
      if (!to_online_expr(*s, phi.extra_args)) continue;
      Template t = templatize(*s, phi.extra_args);
      bool dup = std::any_of(r.templates.begin(), r.templates.end(), [&](const Template& o) { return o.expr == t.expr; });
      r.residues.push_back(*s);
      if (!dup) r.templates.push_back(std::move(t));
    }
    if (r.templates.empty()) r.failure = "no box-rooted literal after elimination at k=" + std::to_string(k);
  } catch (const SymEvalError& e) {
    r.templates.clear();
    r.failure = e.what();
  }
  return r;
}

MineResult mine_with_retry(const Rfs& phi, const Expr& spec, int k) {
  MineResult r = mine_expressions(phi, spec, k);
  if (r.templates.empty()) {
    MineResult again = mine_expressions(phi, spec, k + 1);
    if (!again.templates.empty()) return again;
    r.failure += "; " + again.failure;
  }
  return r;
}

std::string print(const Template& t) { return print(t.expr); }

}  // namespace streamforge
