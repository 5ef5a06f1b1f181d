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


#include "streamforge/enumsynth.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <chrono>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "streamforge/polyinterp.hpp"
#include "streamforge/symeval.hpp"
#include "streamforge/syntax.hpp"

namespace streamforge {

namespace {

using Clock = std::chrono::steady_clock;

std::string show_list(const List& xs) {
  std::string s = "[";
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? " " : "") + to_string(xs[i]);
  return s + "]";
}

Rational eval_spec(const Expr& spec, const List& xs, const Rational& x, const ArgBinding& args) {
  List extended = xs;
  extended.push_back(x);
  EvalEnv env;
  env.xs = &extended;
  env.args = &args;
  return eval_number(spec, env);
}

}  // namespace

void validate(const SearchConfig& cfg) {
  if (cfg.max_size <= 0) throw std::invalid_argument("max size must be positive");
  if (cfg.timeout_seconds <= 0) throw std::invalid_argument("timeout must be positive");
  if (cfg.test_count <= 0) throw std::invalid_argument("test count must be positive");
  if (cfg.min_length > cfg.max_length) throw std::invalid_argument("empty list length range");
  if (cfg.grid.lo > cfg.grid.hi || cfg.grid.denominator <= 0) throw std::invalid_argument("bad value grid");
  if (cfg.unroll_depth <= 0) throw std::invalid_argument("unroll depth must be positive");
  if (cfg.signature_cases <= 0) throw std::invalid_argument("signature cases must be positive");
}

std::string to_string(VerificationLevel level) {
  switch (level) {
    case VerificationLevel::Failed: return "failed";
    case VerificationLevel::Tested: return "tested";
    case VerificationLevel::BoundedVerified: return "bounded-verified";
  }
  return "?";
}

std::vector<TestCase> make_test_cases(const Rfs& phi, const Expr& spec, int count, const SearchConfig& cfg,
                                      std::uint64_t seed) {
  Rng rng(seed);
  std::vector<TestCase> cases(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    auto& c = cases[static_cast<std::size_t>(i)];
    if (i < 2) {
      c.xs = sample_list_of_length(rng, std::max<std::size_t>(cfg.min_length, static_cast<std::size_t>(i)), cfg.grid);
    } else {
      c.xs = sample_list(rng, cfg.min_length, cfg.max_length, cfg.grid);
    }
    c.x = sample_value(rng, cfg.grid);
    c.args = sample_values(rng, phi.extra_args.size(), cfg.grid);
  }
  kernels::parallel_for(cases.size(), cfg.backend, [&](std::size_t i) {
    auto& c = cases[i];
    ArgBinding binding = bind_args(phi.extra_args, c.args);
    c.y = eval_rfs(phi, c.xs, binding);
    c.target = eval_spec(spec, c.xs, c.x, binding);
  });
  return cases;
}

EquivReport check_equiv_detailed(const Rfs& phi, const Expr& candidate, const Expr& spec, const SearchConfig& cfg,
                                 std::uint64_t seed) {
  EquivReport report;
  auto cases = make_test_cases(phi, spec, cfg.test_count, cfg, seed);
  std::vector<std::uint8_t> ok(cases.size(), 0);
  std::vector<std::string> got(cases.size());
  kernels::parallel_for(cases.size(), cfg.backend, [&](std::size_t i) {
    const auto& c = cases[i];
    ArgBinding binding = bind_args(phi.extra_args, c.args);
    EvalEnv env;
    env.x = &c.x;
    env.accums = c.y;
    env.args = &binding;
    try {
      Rational v = eval_number(candidate, env);
      ok[i] = v == c.target;
      got[i] = to_string(v);
    } catch (const EvalError& e) {
      got[i] = std::string("error: ") + e.what();
    }
  });
  for (std::size_t i = 0; i < cases.size(); ++i) {
    if (ok[i]) continue;
    std::ostringstream os;
    os << "xs=" << show_list(cases[i].xs) << " x=" << to_string(cases[i].x);
    if (!cases[i].args.empty()) os << " args=" << show_list(cases[i].args);
    os << " expected " << to_string(cases[i].target) << " got " << got[i];
    report.counterexample = os.str();
    return report;
  }

  const Expr extended = snoc_substitute(spec);
  for (int len = 0; len <= cfg.bounded_max_length; ++len) {
    SymTerm cand;
    SymTerm expected;
    try {
      SymEnv env;
      for (const auto& entry : phi.entries) env.accums.push_back(unroll(entry, len).term);
      SymTerm xv = SymTerm::var("x");
      env.x = &xv;
      cand = sym_eval(candidate, env);
      expected = unroll(extended, len).term;
    } catch (const SymEvalError&) {
      continue;
    }
    if (cand == expected) {
      report.verified_lengths.push_back(len);
    } else if (!cand.has_foreign_atoms() && !expected.has_foreign_atoms()) {
      report.counterexample = "symbolic mismatch at length " + std::to_string(len) + ": " + cand.to_string() +
                              " vs " + expected.to_string();
      return report;
    }
  }
  report.equivalent = true;
  report.level = static_cast<int>(report.verified_lengths.size()) == cfg.bounded_max_length + 1
                     ? VerificationLevel::BoundedVerified
                     : VerificationLevel::Tested;
  return report;
}

bool check_equiv_mod_rfs(const Rfs& phi, const Expr& candidate, const Expr& spec, const SearchConfig& cfg) {
  return check_equiv_detailed(phi, candidate, spec, cfg, cfg.seed).equivalent;
}

int expr_size(const Expr& e) {
  if (e.kind() == NodeKind::Func) return 0;
  int n = 1;
  for (const auto& c : e.children()) n += expr_size(c);
  return n;
}

namespace {

struct Grammar {
  std::vector<Builtin> unary;       // neg, abs
  std::vector<unsigned> exponents;  // pow
  std::vector<Builtin> binary;      // + - * / min max
  std::vector<Builtin> compare;
  std::vector<Builtin> logic;       // and, or
  bool has_not = false;
  bool has_ite = false;
};

void collect_ops(const Expr& e, std::set<Builtin>& ops, std::set<unsigned>& exps, bool& ite) {
  if (e.kind() == NodeKind::Func) ops.insert(e.builtin());
  if (e.kind() == NodeKind::Ite) ite = true;
  if (e.kind() == NodeKind::Apply && e.fn().kind() == NodeKind::Func && e.fn().builtin() == Builtin::Pow) {
    const Expr& ex = e.child(2);
    if (ex.kind() == NodeKind::Const && is_integer(ex.value()) && ex.value() > 1) {
      exps.insert(static_cast<unsigned>(ex.value().get_num().get_ui()));
    }
  }
  for (const auto& c : e.children()) collect_ops(c, ops, exps, ite);
}

Grammar grammar_for(const Rfs& phi) {
  std::set<Builtin> ops{Builtin::Add, Builtin::Mul};
  std::set<unsigned> exps;
  bool ite = false;
  for (const auto& entry : phi.entries) collect_ops(entry, ops, exps, ite);
  Grammar g;
  for (Builtin op : ops) {
    switch (op) {
      case Builtin::Neg:
      case Builtin::Abs: g.unary.push_back(op); break;
      case Builtin::Add:
      case Builtin::Sub:
      case Builtin::Mul:
      case Builtin::Div:
      case Builtin::Min:
      case Builtin::Max: g.binary.push_back(op); break;
      case Builtin::Lt:
      case Builtin::Le:
      case Builtin::Gt:
      case Builtin::Ge:
      case Builtin::Eq: g.compare.push_back(op); break;
      case Builtin::And:
      case Builtin::Or: g.logic.push_back(op); break;
      case Builtin::Not: g.has_not = true; break;
      case Builtin::Pow: break;
    }
  }
  g.exponents.assign(exps.begin(), exps.end());
  g.has_ite = ite || !g.compare.empty();
  return g;
}

struct NumEntry {
  Expr expr;
  Column col;
};

struct BoolEntry {
  Expr expr;
  Mask mask;
};

/// Monomial columns of a template over the signature cases.
struct TemplateColumns {
  const Template* t = nullptr;
  std::vector<Column> num;
  std::vector<Column> den;
  int base_size = 0;
};

class Search {
 public:
  Search(const Rfs& phi, const Expr& spec, const std::vector<Template>& templates, const SearchConfig& cfg)
      : phi_(phi), spec_(spec), cfg_(cfg), start_(Clock::now()) {
    cases_ = make_test_cases(phi, spec, cfg.signature_cases, cfg, derive_seed(cfg.seed, 0x516));
    rows_ = cases_.size();
    for (const auto& c : cases_) target_.push_back(c.target);
    grammar_ = grammar_for(phi);
    for (const auto& t : templates) {
      if (!t.exact()) prepare_template(t);
    }
  }

  EnumResult run() {
    EnumResult out;
    num_by_size_.resize(static_cast<std::size_t>(cfg_.max_size) + 1);
    bool_by_size_.resize(static_cast<std::size_t>(cfg_.max_size) + 1);
    try {
      for (int s = 1; s <= cfg_.max_size && !found_; ++s) {
        level_ = s;
        if (s == 1) {
          terminals();
        } else {
          compose(s);
        }
        if (!found_) fill_templates(s);
      }
    } catch (const Timeout&) {
      out.failure = "timeout after " + std::to_string(cfg_.timeout_seconds) + " s at size " + std::to_string(level_);
    }
    out.explored = explored_;
    out.best = best_;
    if (found_) {
      out.expr = found_->expr;
      out.level = found_->level;
      out.method = found_->from_template ? "template+enum" : "enum";
    } else if (out.failure.empty()) {
      out.failure = "search space exhausted at size " + std::to_string(cfg_.max_size);
    }
    return out;
  }

 private:
  struct Timeout {};
  struct Found {
    Expr expr;
    VerificationLevel level;
    bool from_template;
  };

  std::string var_of(std::size_t i) const { return accum_var_name(static_cast<int>(i + 1)); }

  std::optional<Rational> point_value(std::size_t row, const std::string& name) const {
    const auto& c = cases_[row];
    if (name == "x") return c.x;
    for (std::size_t i = 0; i < c.y.size(); ++i) {
      if (name == var_of(i)) return c.y[i];
    }
    for (std::size_t i = 0; i < phi_.extra_args.size(); ++i) {
      if (name == phi_.extra_args[i]) return c.args[i];
    }
    return std::nullopt;
  }

  void prepare_template(const Template& t) {
    TemplateColumns tc;
    tc.t = &t;
    auto columns = [&](const std::vector<TemplateTerm>& terms, std::vector<Column>& out) {
      for (const auto& term : terms) {
        SymTerm m(Polynomial::from_terms({Term{term.mono, Rational(1)}}));
        Column col(rows_);
        for (std::size_t r = 0; r < rows_; ++r) {
          auto v = m.evaluate([&](const std::string& n) { return point_value(r, n); });
          if (!v) return false;
          col[r] = *v;
        }
        out.push_back(std::move(col));
      }
      return true;
    };
    if (!columns(t.num, tc.num) || !columns(t.den, tc.den)) return;
    tc.base_size = expr_size(t.expr);
    templates_.push_back(std::move(tc));
  }

  void tick() {
    ++explored_;
    if ((explored_ & 255) == 0) {
      double elapsed = std::chrono::duration<double>(Clock::now() - start_).count();
      if (elapsed > cfg_.timeout_seconds) throw Timeout{};
    }
  }

  void score(const Column& col, const std::function<Expr()>& build, bool from_template) {
    std::size_t passed = kernels::count_matches(col, target_, Backend::Serial);
    if (passed == rows_) {
      Expr e = build();
      auto report = check_equiv_detailed(phi_, e, spec_, cfg_, derive_seed(cfg_.seed, 0xF00D + checks_++));
      spdlog::debug("candidate {} matches the signature; full check {}", print(e),
                    report.equivalent ? "passed" : "failed: " + report.counterexample);
      if (report.equivalent) {
        found_ = Found{e, report.level, from_template};
        return;
      }
    }
    if (best_.size() < 3 || passed > best_.back().passed) {
      best_.push_back({build(), passed, rows_});
      std::stable_sort(best_.begin(), best_.end(),
                       [](const ScoredCandidate& a, const ScoredCandidate& b) { return a.passed > b.passed; });
      if (best_.size() > 3) best_.pop_back();
    }
  }

  void add_num(int size, Column col, const std::function<Expr()>& build) {
    tick();
    if (kernels::max_bits(col) > kMaxBits) return;
    std::size_t h = kernels::hash_column(col);
    auto& bucket = seen_num_[h];
    for (std::size_t idx : bucket) {
      if (num_[idx].col == col) return;
    }
    score(col, build, false);
    if (found_) throw Stop{};
    if (size < cfg_.max_size && num_.size() < cfg_.bank_limit) {
      bucket.push_back(num_.size());
      num_by_size_[static_cast<std::size_t>(size)].push_back(num_.size());
      num_.push_back({build(), std::move(col)});
    }
  }

  void add_bool(int size, Mask mask, const std::function<Expr()>& build) {
    tick();
    if (size >= cfg_.max_size || bools_.size() >= cfg_.bank_limit) return;
    std::size_t h = kernels::hash_mask(mask);
    auto& bucket = seen_bool_[h];
    for (std::size_t idx : bucket) {
      if (bools_[idx].mask == mask) return;
    }
    bucket.push_back(bools_.size());
    bool_by_size_[static_cast<std::size_t>(size)].push_back(bools_.size());
    bools_.push_back({build(), std::move(mask)});
  }

  struct Stop {};

  void guarded(const std::function<void()>& body) {
    try {
      body();
    } catch (const Stop&) {
    }
  }

  void terminals() {
    guarded([&] {
      for (std::size_t i = 0; i < phi_.size(); ++i) {
        Column col(rows_);
        for (std::size_t r = 0; r < rows_; ++r) col[r] = cases_[r].y[i];
        add_num(1, std::move(col), [i] { return Expr::accum(static_cast<int>(i + 1)); });
      }
      Column xs(rows_);
      for (std::size_t r = 0; r < rows_; ++r) xs[r] = cases_[r].x;
      add_num(1, std::move(xs), [] { return Expr::new_elem(); });
      for (std::size_t a = 0; a < phi_.extra_args.size(); ++a) {
        Column col(rows_);
        for (std::size_t r = 0; r < rows_; ++r) col[r] = cases_[r].args[a];
        const std::string name = phi_.extra_args[a];
        add_num(1, std::move(col), [name] { return Expr::var(name); });
      }
      for (long c : {0L, 1L, 2L}) {
        add_num(1, Column(rows_, Rational(c)), [c] { return Expr::constant(c); });
      }
    });
  }

  // Sizes below the current level are complete, so these lists are stable
  // while the level grows.
  const std::vector<std::size_t>& nums(int size) const {
    static const std::vector<std::size_t> none;
    return size >= 1 && size < level_ ? num_by_size_[static_cast<std::size_t>(size)] : none;
  }
  const std::vector<std::size_t>& bools(int size) const {
    static const std::vector<std::size_t> none;
    return size >= 1 && size < level_ ? bool_by_size_[static_cast<std::size_t>(size)] : none;
  }

  void compose(int s) {
    guarded([&] {
      for (Builtin op : grammar_.unary) {
        for (std::size_t i : nums(s - 1)) {
          add_num(s, kernels::unary(op, num_[i].col, Backend::Serial),
                  [&, op, i] { return Expr::apply(op, {num_[i].expr}); });
        }
      }
      for (unsigned ex : grammar_.exponents) {
        for (std::size_t i : nums(s - 2)) {
          add_num(s, kernels::power(num_[i].col, ex, Backend::Serial),
                  [&, ex, i] { return Expr::apply(Builtin::Pow, {num_[i].expr, Expr::constant(static_cast<long>(ex))}); });
        }
      }
      for (Builtin op : grammar_.binary) {
        const bool comm = is_commutative(op);
        for (int a = 1; a <= s - 2; ++a) {
          const int b = s - 1 - a;
          if (comm && a > b) break;
          for (std::size_t i : nums(a)) {
            for (std::size_t j : nums(b)) {
              if (comm && a == b && j < i) continue;
              add_num(s, kernels::binary(op, num_[i].col, num_[j].col, Backend::Serial),
                      [&, op, i, j] { return Expr::apply(op, {num_[i].expr, num_[j].expr}); });
            }
          }
        }
      }
      for (Builtin op : grammar_.compare) {
        for (int a = 1; a <= s - 2; ++a) {
          for (std::size_t i : nums(a)) {
            for (std::size_t j : nums(s - 1 - a)) {
              if (i == j) continue;
              add_bool(s, kernels::compare(op, num_[i].col, num_[j].col, Backend::Serial),
                       [&, op, i, j] { return Expr::apply(op, {num_[i].expr, num_[j].expr}); });
            }
          }
        }
      }
      if (grammar_.has_not) {
        for (std::size_t i : bools(s - 1)) {
          add_bool(s, kernels::negate(bools_[i].mask, Backend::Serial),
                   [&, i] { return Expr::apply(Builtin::Not, {bools_[i].expr}); });
        }
      }
      for (Builtin op : grammar_.logic) {
        for (int a = 1; a <= (s - 1) / 2; ++a) {
          for (std::size_t i : bools(a)) {
            for (std::size_t j : bools(s - 1 - a)) {
              if (a == s - 1 - a && j <= i) continue;
              add_bool(s, kernels::logic(op, bools_[i].mask, bools_[j].mask, Backend::Serial),
                       [&, op, i, j] { return Expr::apply(op, {bools_[i].expr, bools_[j].expr}); });
            }
          }
        }
      }
      if (grammar_.has_ite) {
        for (int c = 3; c <= s - 3; ++c) {
          for (int a = 1; a <= s - 2 - c; ++a) {
            const int b = s - 1 - c - a;
            for (std::size_t k : bools(c)) {
              for (std::size_t i : nums(a)) {
                for (std::size_t j : nums(b)) {
                  if (i == j) continue;
                  add_num(s, kernels::select(bools_[k].mask, num_[i].col, num_[j].col, Backend::Serial),
                          [&, k, i, j] { return Expr::ite(bools_[k].expr, num_[i].expr, num_[j].expr); });
                }
              }
            }
          }
        }
      }
    });
  }

  Column evaluate_template(const TemplateColumns& tc, const std::vector<std::size_t>& fill) const {
    const Template& t = *tc.t;
    auto side = [&](const std::vector<TemplateTerm>& terms, const std::vector<Column>& cols, std::size_t r) {
      Rational acc = 0;
      for (std::size_t k = 0; k < terms.size(); ++k) {
        Rational c = terms[k].coeff * cols[k][r];
        if (terms[k].unknown) c *= num_[fill[static_cast<std::size_t>(terms[k].unknown - 1)]].col[r];
        acc += c;
      }
      return acc;
    };
    Column out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
      Rational n = side(t.num, tc.num, r);
      out[r] = t.den.empty() ? n : safe_div(n, side(t.den, tc.den, r));
    }
    return out;
  }

  void fill_templates(int s) {
    guarded([&] {
      for (const auto& tc : templates_) {
        const int m = tc.t->unknown_count;
        const int total = s - tc.base_size + m;
        if (total < m) continue;
        std::size_t budget = kFillBudget;
        std::vector<int> parts(static_cast<std::size_t>(m), 1);
        std::vector<std::size_t> fill(static_cast<std::size_t>(m));
        // Compositions of `total` into m positive parts, each part drawn from the bank.
        std::function<void(int, int)> split = [&](int k, int left) {
          if (k == m - 1) {
            parts[static_cast<std::size_t>(k)] = left;
            product(tc, parts, fill, 0, budget);
            return;
          }
          for (int p = 1; p <= left - (m - 1 - k); ++p) {
            parts[static_cast<std::size_t>(k)] = p;
            split(k + 1, left - p);
            if (budget == 0) return;
          }
        };
        split(0, total);
      }
    });
  }

  void product(const TemplateColumns& tc, const std::vector<int>& parts, std::vector<std::size_t>& fill,
               std::size_t k, std::size_t& budget) {
    if (budget == 0) return;
    if (k == parts.size()) {
      --budget;
      tick();
      Column col = evaluate_template(tc, fill);
      auto build = [&, fill] {
        std::vector<Expr> fills;
        for (std::size_t i : fill) fills.push_back(num_[i].expr);
        return tc.t->instantiate(fills);
      };
      score(col, build, true);
      if (found_) throw Stop{};
      return;
    }
    if (parts[k] >= level_) return;
    for (std::size_t i : num_by_size_[static_cast<std::size_t>(parts[k])]) {
      fill[k] = i;
      product(tc, parts, fill, k + 1, budget);
      if (budget == 0) return;
    }
  }

  static constexpr std::size_t kMaxBits = 512;
  static constexpr std::size_t kFillBudget = 20000;

  const Rfs& phi_;
  const Expr& spec_;
  const SearchConfig& cfg_;
  Clock::time_point start_;
  std::vector<TestCase> cases_;
  std::size_t rows_ = 0;
  Column target_;
  Grammar grammar_;
  std::vector<TemplateColumns> templates_;

  std::vector<NumEntry> num_;
  std::vector<BoolEntry> bools_;
  std::vector<std::vector<std::size_t>> num_by_size_;
  std::vector<std::vector<std::size_t>> bool_by_size_;
  std::unordered_map<std::size_t, std::vector<std::size_t>> seen_num_;
  std::unordered_map<std::size_t, std::vector<std::size_t>> seen_bool_;

  int level_ = 0;
  std::size_t explored_ = 0;
  std::uint64_t checks_ = 0;
  std::optional<Found> found_;
  std::vector<ScoredCandidate> best_;
};

}  // namespace

EnumResult enum_synthesize(const Rfs& phi, const Expr& spec, const std::vector<Template>& templates,
                           const SearchConfig& cfg) {
  validate(cfg);
  const std::uint64_t check_seed = derive_seed(cfg.seed, 0xE0);
  for (const auto& t : templates) {
    if (!t.exact()) continue;
    auto report = check_equiv_detailed(phi, t.expr, spec, cfg, check_seed);
    if (report.equivalent) {
      EnumResult r;
      r.expr = t.expr;
      r.method = "template";
      r.level = report.level;
      return r;
    }
    spdlog::debug("exact template {} rejected: {}", print(t.expr), report.counterexample);
  }
  for (const auto& t : templates) {
    if (t.exact()) continue;
    auto sol = solve_template(spec, phi, t, SamplePlan{}, cfg);
    if (sol.expr) {
      EnumResult r;
      r.expr = sol.expr;
      r.method = "template+interp";
      r.level = sol.level;
      return r;
    }
    spdlog::debug("template {} not solved by interpolation: {}", print(t.expr), sol.failure);
  }
  Search search(phi, spec, templates, cfg);
  return search.run();
}

}  // namespace streamforge
