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


#include "streamforge/rfs.hpp"

#include <algorithm>
#include <set>

#include "streamforge/symeval.hpp"
#include "streamforge/syntax.hpp"

namespace streamforge {

std::optional<int> Rfs::length_accumulator() const {
  Expr len = Expr::length(Expr::list_var());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i] == len) return static_cast<int>(i + 1);
  }
  return std::nullopt;
}

Rfs construct_rfs(const OfflineProgram& p) {
  Rfs phi;
  phi.extra_args = p.extra_args;
  phi.entries.push_back(p.body);
  for (const auto& e : list_expressions(p)) {
    if (e == p.body) continue;
    phi.entries.push_back(e);
  }
  return phi;
}

std::vector<Rational> synth_initializer(const Rfs& phi) {
  std::vector<Rational> init;
  List empty;
  if (phi.extra_args.empty()) {
    EvalEnv env;
    env.xs = &empty;
    for (const auto& e : phi.entries) init.push_back(eval_number(e, env));
    return init;
  }
  SymList nil;
  SymEnv env;
  env.xs = &nil;
  for (const auto& e : phi.entries) {
    SymTerm t = sym_eval(e, env);
    if (!t.is_constant()) {
      throw EvalError("initial value of " + print(e) + " depends on extra arguments: " + t.to_string());
    }
    init.push_back(t.constant_value());
  }
  return init;
}

Tuple eval_rfs(const Rfs& phi, const List& xs, const ArgBinding& args) {
  EvalEnv env;
  env.xs = &xs;
  env.args = &args;
  Tuple out;
  out.reserve(phi.entries.size());
  for (const auto& e : phi.entries) out.push_back(eval_number(e, env));
  return out;
}

SymFormula rfs_formula(const Rfs& phi) {
  SymFormula f;
  for (std::size_t i = 0; i < phi.entries.size(); ++i) {
    f.literals.push_back({Expr::accum(static_cast<int>(i + 1)), phi.entries[i]});
  }
  return f;
}

namespace {

void collect_accums(const Expr& e, std::set<int>& out) {
  if (e.kind() == NodeKind::AccumVar) out.insert(e.index());
  for (const auto& k : e.children()) collect_accums(k, out);
}

}  // namespace

PruneResult prune_unused_detailed(const OnlineScheme& s) {
  std::vector<int> alive;
  for (std::size_t i = 0; i < s.arity(); ++i) alive.push_back(static_cast<int>(i + 1));
  std::vector<std::set<int>> uses(s.arity() + 1);
  for (std::size_t i = 0; i < s.arity(); ++i) collect_accums(s.update[i].expr(), uses[i + 1]);

  for (bool changed = true; changed;) {
    changed = false;
    for (auto it = alive.begin(); it != alive.end(); ++it) {
      int i = *it;
      if (i == 1) continue;
      bool read = std::any_of(alive.begin(), alive.end(), [&](int j) { return j != i && uses[j].count(i); });
      if (!read) {
        alive.erase(it);
        changed = true;
        break;
      }
    }
  }

  PruneResult r;
  r.kept = alive;
  for (std::size_t i = 1; i <= s.arity(); ++i) {
    if (std::find(alive.begin(), alive.end(), static_cast<int>(i)) == alive.end()) {
      r.removed.push_back(static_cast<int>(i));
    }
  }
  std::vector<int> renumber(s.arity() + 1, 0);
  for (std::size_t k = 0; k < alive.size(); ++k) renumber[alive[k]] = static_cast<int>(k + 1);
  r.scheme.extra_args = s.extra_args;
  for (int i : alive) {
    r.scheme.init.push_back(s.init[i - 1]);
    Expr e = rewrite(s.update[i - 1].expr(), [&](const Expr& n) -> std::optional<Expr> {
      if (n.kind() == NodeKind::AccumVar) return Expr::accum(renumber[n.index()]);
      return std::nullopt;
    });
    r.scheme.update.emplace_back(std::move(e));
  }
  return r;
}

OnlineScheme prune_unused(const OnlineScheme& s) { return prune_unused_detailed(s).scheme; }

std::string print(const Rfs& phi) {
  std::string out = "(rfs";
  for (std::size_t i = 0; i < phi.entries.size(); ++i) {
    out += "\n  (y" + std::to_string(i + 1) + " " + print(phi.entries[i]) + ")";
  }
  out += ")";
  return out;
}

}  // namespace streamforge
