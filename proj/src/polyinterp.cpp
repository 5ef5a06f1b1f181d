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


#include "streamforge/polyinterp.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <set>
#include <stdexcept>

#include "streamforge/sampling.hpp"
#include "streamforge/symeval.hpp"

namespace streamforge {

namespace {

SymTerm mono_term(const Monomial& m) { return SymTerm(Polynomial::from_terms({Term{m, Rational(1)}})); }

bool structurally_homogeneous(const Template& t) {
  if (t.den.empty()) return false;
  auto fixed = [](const TemplateTerm& term) { return term.unknown == 0; };
  return std::none_of(t.num.begin(), t.num.end(), fixed) && std::none_of(t.den.begin(), t.den.end(), fixed);
}

struct Row {
  std::vector<Rational> a;
  Rational b;
  Rational n;
};

std::optional<Row> sample_row(const Expr& spec, const Rfs& phi, const Template& t, int length, int n_index,
                              Rng& rng, const ValueGrid& grid) {
  List xs = sample_list_of_length(rng, static_cast<std::size_t>(length), grid);
  Rational xhat = sample_value(rng, grid);
  std::vector<Rational> argv = sample_values(rng, phi.extra_args.size(), grid);
  ArgBinding binding = bind_args(phi.extra_args, argv);
  Tuple y = eval_rfs(phi, xs, binding);
  List extended = xs;
  extended.push_back(xhat);
  EvalEnv env;
  env.xs = &extended;
  env.args = &binding;
  Rational v = eval_number(spec, env);

  Point point = [&](const std::string& name) -> std::optional<Rational> {
    if (name == "x") return xhat;
    for (std::size_t i = 0; i < y.size(); ++i) {
      if (name == accum_var_name(static_cast<int>(i + 1))) return y[i];
    }
    for (const auto& [arg, value] : binding) {
      if (arg == name) return value;
    }
    return std::nullopt;
  };

  Row row;
  row.a.assign(static_cast<std::size_t>(t.unknown_count), Rational(0));
  row.b = t.den.empty() ? v : Rational(0);
  row.n = y[static_cast<std::size_t>(n_index - 1)];
  auto add = [&](const TemplateTerm& term, const Rational& scale) -> bool {
    auto m = mono_term(term.mono).evaluate(point);
    if (!m) return false;
    if (term.unknown) {
      row.a[static_cast<std::size_t>(term.unknown - 1)] += scale * term.coeff * *m;
    } else {
      row.b -= scale * term.coeff * *m;
    }
    return true;
  };
  for (const auto& term : t.num) {
    if (!add(term, 1)) return std::nullopt;
  }
  for (const auto& term : t.den) {
    if (!add(term, -v)) return std::nullopt;
  }
  return row;
}

}  // namespace

std::optional<std::vector<Rational>> solve_linear_system(std::vector<std::vector<Rational>> a,
                                                         std::vector<Rational> b) {
  const std::size_t rows = a.size();
  if (rows != b.size() || rows == 0) return std::nullopt;
  const std::size_t cols = a[0].size();
  std::size_t r = 0;
  std::vector<std::size_t> pivots;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) return std::nullopt;
    std::swap(a[p], a[r]);
    std::swap(b[p], b[r]);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      Rational f = a[i][c] / a[r][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
      b[i] -= f * b[r];
    }
    pivots.push_back(c);
    ++r;
  }
  if (pivots.size() != cols) return std::nullopt;
  for (std::size_t i = r; i < rows; ++i) {
    if (b[i] != 0) return std::nullopt;
  }
  std::vector<Rational> x(cols);
  for (std::size_t i = 0; i < cols; ++i) x[i] = b[i] / a[i][i];
  return x;
}

SampleOutcome sample_points(const Expr& spec, const Rfs& phi, const Template& t, const SamplePlan& plan,
                            std::uint64_t seed, const ValueGrid& grid) {
  SampleOutcome out;
  auto n_index = phi.length_accumulator();
  if (!n_index) {
    out.not_applicable = true;
    out.failure = "no length accumulator in the signature";
    return out;
  }
  if (t.unknown_count == 0) {
    out.failure = "template has no unknowns";
    return out;
  }
  std::vector<int> lengths = plan.lengths;
  if (lengths.empty()) {
    for (int l = 1; l <= plan.max_length; ++l) lengths.push_back(l);
  }
  const bool pinned = structurally_homogeneous(t);
  int pin = 0;
  if (pinned) {
    for (const auto& term : t.den) {
      if (term.unknown) {
        pin = term.unknown;
        break;
      }
    }
  }
  const std::size_t m = static_cast<std::size_t>(t.unknown_count);

  UnknownPoints pts;
  std::set<long> abscissae;
  for (int l : lengths) {
    if (static_cast<int>(pts.lengths.size()) >= plan.sample_length_count) break;
    bool solved = false;
    for (int attempt = 0; attempt < plan.retries && !solved; ++attempt) {
      Rng rng(derive_seed(seed, static_cast<std::uint64_t>(l) * 1024 + static_cast<std::uint64_t>(attempt)));
      std::vector<std::vector<Rational>> a;
      std::vector<Rational> b;
      std::optional<Rational> n;
      bool ok = true;
      for (std::size_t r = 0; r < m && ok; ++r) {
        std::optional<Row> row;
        try {
          row = sample_row(spec, phi, t, l, *n_index, rng, grid);
        } catch (const EvalError&) {
          row.reset();
        }
        if (!row || (n && *n != row->n)) {
          ok = false;
          break;
        }
        n = row->n;
        if (pinned) {
          row->b -= row->a[static_cast<std::size_t>(pin - 1)];
          row->a.erase(row->a.begin() + (pin - 1));
        }
        a.push_back(std::move(row->a));
        b.push_back(row->b);
      }
      if (!ok || !n || !is_integer(*n)) continue;
      auto sol = solve_linear_system(a, b);
      if (!sol) continue;
      if (pinned) sol->insert(sol->begin() + (pin - 1), Rational(1));
      long abscissa = n->get_num().get_si();
      if (!abscissae.insert(abscissa).second) continue;
      for (std::size_t u = 0; u < m; ++u) pts.points[static_cast<int>(u + 1)].push_back({abscissa, (*sol)[u]});
      pts.lengths.push_back(l);
      solved = true;
    }
    if (!solved) pts.skipped.push_back(l);
  }
  if (static_cast<int>(pts.lengths.size()) < plan.sample_length_count) {
    out.failure = "only " + std::to_string(pts.lengths.size()) + " of " +
                  std::to_string(plan.sample_length_count) + " lengths gave a nonsingular system";
    return out;
  }
  out.points = std::move(pts);
  return out;
}

Rational UniPoly::operator()(const Rational& n) const {
  Rational acc = 0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * n + *it;
  return acc;
}

SymTerm UniPoly::in_var(const std::string& var) const {
  SymTerm acc(Rational(0));
  SymTerm v = SymTerm::var(var);
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * v + SymTerm(*it);
  return acc;
}

std::string UniPoly::to_string(const std::string& var) const {
  return in_var(var).to_string();
}

UniPoly interpolate(const std::vector<Point2>& points) {
  if (points.empty()) throw std::invalid_argument("interpolation needs at least one point");
  std::set<long> xs;
  for (const auto& p : points) {
    if (!xs.insert(p.first).second) throw std::invalid_argument("duplicate abscissa " + std::to_string(p.first));
  }
  const std::size_t k = points.size();
  std::vector<Rational> dd(k);
  for (std::size_t i = 0; i < k; ++i) dd[i] = points[i].second;
  for (std::size_t j = 1; j < k; ++j) {
    for (std::size_t i = k - 1; i >= j; --i) {
      dd[i] = (dd[i] - dd[i - 1]) / Rational(points[i].first - points[i - j].first);
    }
  }
  // Horner over the Newton basis.
  std::vector<Rational> c{dd[k - 1]};
  for (std::size_t i = k - 1; i-- > 0;) {
    Rational xi(points[i].first);
    std::vector<Rational> next(c.size() + 1, Rational(0));
    for (std::size_t d = 0; d < c.size(); ++d) {
      next[d + 1] += c[d];
      next[d] -= xi * c[d];
    }
    next[0] += dd[i];
    c = std::move(next);
  }
  while (!c.empty() && c.back() == 0) c.pop_back();
  return UniPoly{c};
}

TemplateSolution solve_template(const Expr& spec, const Rfs& phi, const Template& t, const SamplePlan& plan,
                                const SearchConfig& cfg) {
  TemplateSolution out;
  const std::uint64_t check_seed = derive_seed(cfg.seed, 0xF2E5);
  if (t.exact()) {
    auto report = check_equiv_detailed(phi, t.expr, spec, cfg, check_seed);
    out.level = report.level;
    out.symbolic = t.source;
    if (report.equivalent) {
      out.expr = t.expr;
    } else {
      out.failure = "template is not equivalent: " + report.counterexample;
    }
    return out;
  }
  auto sampled = sample_points(spec, phi, t, plan, derive_seed(cfg.seed, 0x1A7E), cfg.grid);
  if (!sampled.points) {
    out.not_applicable = sampled.not_applicable;
    out.failure = sampled.failure;
    return out;
  }
  const std::string n_var = accum_var_name(*phi.length_accumulator());
  std::vector<SymTerm> values;
  std::vector<Expr> fills;
  for (int u = 1; u <= t.unknown_count; ++u) {
    UniPoly p = interpolate(sampled.points->points.at(u));
    SymTerm term = p.in_var(n_var);
    auto e = to_online_expr(term, phi.extra_args);
    if (!e) {
      out.failure = "interpolant is not expressible";
      return out;
    }
    spdlog::debug("unknown ??{} = {}", u, term.to_string());
    out.polys.push_back(std::move(p));
    values.push_back(term);
    fills.push_back(*e);
  }
  out.symbolic = t.instantiate(values);
  Expr candidate = t.instantiate(fills);
  auto report = check_equiv_detailed(phi, candidate, spec, cfg, check_seed);
  out.level = report.level;
  if (!report.equivalent) {
    out.failure = "interpolated template failed the equivalence check: " + report.counterexample;
    return out;
  }
  out.expr = candidate;
  return out;
}

}  // namespace streamforge
