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

// One PASS/FAIL line per acceptance criterion. Exit status is nonzero iff
// some criterion failed.

#include <spdlog/spdlog.h>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "properties.hpp"
#include "streamforge/bench_harness.hpp"
#include "streamforge/driver.hpp"
#include "streamforge/mine.hpp"
#include "streamforge/polyinterp.hpp"
#include "streamforge/symbolic.hpp"
#include "streamforge/symeval.hpp"
#include "streamforge/syntax.hpp"

using namespace streamforge;

namespace {

using Clock = std::chrono::steady_clock;

const std::string kCorpus = STREAMFORGE_CORPUS_DIR;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

double since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

struct Verdict {
  bool pass = false;
  std::string detail;
};

SymTerm v(const std::string& name) { return SymTerm::var(name); }

Verdict welford() {
  auto start = Clock::now();
  OfflineProgram p = parse_program(slurp(kCorpus + "/bench/variance.off"));
  SynthesisResult r = synthesize(p, SearchConfig{});
  double secs = since(start);
  SearchConfig check;
  int bad = gate_mismatches(p, r.scheme, 500, check, 0xACCE);

  Rfs phi = construct_rfs(p);
  int sq = 0;
  for (int i = 1; i <= static_cast<int>(phi.size()); ++i) {
    if (find_implicate(phi, phi.at(i)).implicate.is_true()) sq = i;
  }
  std::string method;
  for (const auto& h : r.holes) {
    if (sq && h.spec == print(phi.at(sq))) method = h.method;
  }
  bool shape = false;
  int unknowns = -1;
  if (sq) {
    auto m = mine_expressions(phi, phi.at(sq), 3);
    if (m.templates.size() == 1) {
      const Template& t = m.templates[0];
      unknowns = t.unknown_count;
      // (s^2 - ??*s*x + ??*sq + ??*x^2) / ??
      const std::string s = accum_var_name(2), n2 = accum_var_name(sq);
      int fixed_s2 = 0, neg_sx = 0, sq_u = 0, x2_u = 0;
      for (const auto& term : t.num) {
        const Monomial& mo = term.mono;
        if (mo.degree() == 2 && mo.exponent_of(s) == 2 && !term.unknown && term.coeff == 1) ++fixed_s2;
        if (mo.exponent_of(s) == 1 && mo.exponent_of("x") == 1 && term.unknown && term.coeff == -1) ++neg_sx;
        if (mo.degree() == 1 && mo.exponent_of(n2) == 1 && term.unknown) ++sq_u;
        if (mo.degree() == 2 && mo.exponent_of("x") == 2 && term.unknown) ++x2_u;
      }
      shape = t.num.size() == 4 && fixed_s2 == 1 && neg_sx == 1 && sq_u == 1 && x2_u == 1 && t.den.size() == 1 &&
              t.den[0].unknown && t.den[0].mono.is_one();
    }
  }
  std::ostringstream d;
  d << "mismatches " << bad << "/500, " << secs << " s, sq hole via " << method << ", template unknowns "
    << unknowns << (shape ? ", shape ok" : ", shape wrong");
  return {bad == 0 && secs < 600 && method == "template+interp" && unknowns == 4 && shape, d.str()};
}

Verdict mean() {
  auto start = Clock::now();
  SynthesisResult r = synthesize(parse_program(slurp(kCorpus + "/bench/mean.off")), SearchConfig{});
  double secs = since(start);
  List traj = run_scheme(r.scheme, {0, 1, 2, 3});
  bool all_imp = !r.holes.empty();
  for (const auto& h : r.holes) all_imp = all_imp && h.method == "implicate";
  List want = {0, Rational(1, 2), 1, Rational(3, 2)};
  std::ostringstream d;
  d << r.scheme.arity() << " accumulators, " << r.holes.size() << " holes by implicate=" << all_imp << ", " << secs
    << " s";
  return {r.scheme.arity() <= 3 && traj == want && all_imp && secs < 60, d.str()};
}

Verdict implicate() {
  Rfs mean2;
  mean2.entries = {parse_offline_expr("(/ (foldl + 0 xs) (length xs))"), parse_offline_expr("(length xs)")};
  auto r = find_implicate(mean2, parse_offline_expr("(foldl + 0 xs)"));
  bool mean_ok = r.solutions.size() == 1 && r.solutions[0] == v("y1") * v("y2") + v("x");
  Rfs var = construct_rfs(parse_program(slurp(kCorpus + "/bench/variance.off")));
  bool sq_true = find_implicate(var, var.at(4)).implicate.is_true();
  return {mean_ok && sq_true, std::string("mean box = ") + (r.solutions.empty() ? "none" : r.solutions[0].to_string()) +
                                  ", variance sq implicate " + (sq_true ? "true" : "not true")};
}

Verdict interpolation() {
  auto start = Clock::now();
  struct Target {
    const char* name;
    std::function<Rational(long)> f;
    std::vector<Rational> coeffs;
  };
  std::vector<Target> targets = {
      {"2n", [](long n) { return Rational(2 * n); }, {0, 2}},
      {"n^2+n", [](long n) { return Rational(n * n + n); }, {0, 1, 1}},
      {"n^2", [](long n) { return Rational(n * n); }, {0, 0, 1}},
      {"3", [](long) { return Rational(3); }, {3}},
      {"n^3-2n", [](long n) { return Rational(n * n * n - 2 * n); }, {0, -2, 0, 1}},
  };
  int ok = 0;
  for (const auto& t : targets) {
    std::vector<Point2> pts;
    for (long l = 1; l <= 11; ++l) pts.push_back({l, t.f(l)});
    ok += interpolate(pts).coeffs == t.coeffs;
  }
  double secs = since(start);
  return {ok == 5 && secs < 1, std::to_string(ok) + "/5 exact, " + std::to_string(secs) + " s"};
}

Verdict template_solve() {
  Rfs phi = construct_rfs(parse_program(slurp(kCorpus + "/bench/variance.off")));
  Template t = mine_expressions(phi, phi.at(4), 3).templates.at(0);
  auto sol = solve_template(phi.at(4), phi, t, SamplePlan{}, SearchConfig{});
  if (!sol.expr) return {false, sol.failure};
  SymTerm s = v("y2"), n = v("y3"), sq = v("y4"), x = v("x");
  SymTerm expected = (s * s - SymTerm(2) * n * s * x + n * (n + SymTerm(1)) * sq + n * n * x * x) /
                     (n * (n + SymTerm(1)));
  auto report = check_equiv_detailed(phi, *sol.expr, phi.at(4), SearchConfig{}, 0xF8E54);
  return {sol.symbolic == expected && report.equivalent,
          "solved " + sol.symbolic.to_string() + ", fresh check " + to_string(report.level)};
}

Verdict bench() {
  BenchReport r = run_bench(kCorpus + "/bench", SearchConfig{});
  std::ofstream("acceptance_bench.csv") << to_csv(r);
  const std::vector<std::string> required = {"sum",    "count",          "mean", "variance",        "min",
                                             "max",    "sum_of_squares", "m2",   "mean_of_squares", "count_above"};
  int present = 0;
  for (const auto& name : required) {
    for (const auto& e : r.entries) present += e.name == name;
  }
  std::ostringstream d;
  d << r.entries.size() << " programs, solved " << r.solved_fraction() * 100 << "%, " << r.total_seconds()
    << " s, report acceptance_bench.csv";
  return {r.entries.size() >= 10 && present == 10 && r.solved_fraction() >= 0.9, d.str()};
}

std::string random_update(Rng& rng, int arity, int depth) {
  std::uniform_int_distribution<int> pick(0, 5);
  if (depth == 0 || pick(rng) < 2) {
    int k = std::uniform_int_distribution<int>(0, arity + 1)(rng);
    if (k < arity) return "y" + std::to_string(k + 1);
    return k == arity ? "x" : std::to_string(pick(rng) - 2);
  }
  static const char* ops[] = {"+", "-", "*", "/", "min", "max"};
  return std::string("(") + ops[pick(rng)] + " " + random_update(rng, arity, depth - 1) + " " +
         random_update(rng, arity, depth - 1) + ")";
}

Verdict semantics() {
  Rng rng(0x5E3A);
  int ok = 0;
  for (int i = 0; i < 20; ++i) {
    int arity = std::uniform_int_distribution<int>(1, 3)(rng);
    std::string text = "(scheme (init";
    for (int k = 0; k < arity; ++k) text += " " + to_string(sample_value(rng));
    text += ") (update (";
    for (int k = 0; k < arity; ++k) text += (k ? " y" : "y") + std::to_string(k + 1);
    text += ") x (tuple";
    for (int k = 0; k < arity; ++k) text += " " + random_update(rng, arity, 3);
    text += ")))";
    OnlineScheme s = parse_scheme(text);
    bool good = run_scheme(s, {}) == List{s.init[0]};
    for (int t = 0; t < 10; ++t) {
      List xs = sample_list(rng, 1, 12);
      good = good && run_scheme(s, xs).size() == xs.size();
    }
    ok += good;
  }
  return {ok == 20, std::to_string(ok) + "/20 schemes"};
}

Verdict properties() {
  std::vector<props::Outcome> all = {
      props::axiom_validity(11, 200),
      props::implicate_soundness(12, 200),
      props::inductiveness(kCorpus + "/bench", 13, 200),
      props::decompose_resubstitution(14, 200),
      props::unroll_vs_concrete(15, 200),
      props::determinism(kCorpus + "/bench", 16, 200),
  };
  bool pass = true;
  std::string d;
  for (const auto& o : all) {
    pass = pass && o.ok();
    d += (d.empty() ? "" : "; ") + o.name + " " + std::to_string(o.cases) + "/" + std::to_string(o.failures);
  }
  return {pass, d + " (cases/failures)"};
}

Verdict negative() {
  std::string diag;
  try {
    parse_program(slurp(STREAMFORGE_CORPUS_DIR "/../tests/data/quantile.off"));
  } catch (const ParseError& e) {
    diag = e.what();
  }
  bool rejected = diag.find("unknown builtin 'nth'") != std::string::npos;

  SearchConfig cfg;
  cfg.timeout_seconds = 15;
  std::string kurt;
  bool graceful = false;
  try {
    synthesize(parse_program(slurp(kCorpus + "/stress/kurtosis.off")), cfg);
    graceful = true;
    kurt = "solved";
  } catch (const SynthesisError& e) {
    int failed = 0;
    bool diag_ok = true;
    for (const auto& h : e.holes()) {
      if (h.fill) continue;
      ++failed;
      diag_ok = diag_ok && !h.failure.empty() && !h.best.empty();
    }
    graceful = failed > 0 && diag_ok;
    kurt = "failed with diagnostics for " + std::to_string(failed) + " hole(s)";
  }
  return {rejected && graceful, "quantile: " + (diag.empty() ? std::string("accepted") : diag) + "; kurtosis " + kurt};
}

}  // namespace

int main() {
  spdlog::set_level(spdlog::level::warn);
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
      {"1 welford end-to-end", welford},      {"2 mean end-to-end", mean},
      {"3 implicate", implicate},             {"4 interpolation oracle", interpolation},
      {"5 template solve", template_solve},   {"6 benchmark mini-suite", bench},
      {"7 semantics conformance", semantics}, {"8 property suites", properties},
      {"9 negative control", negative},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Verdict v;
    try {
      v = run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    failed += !v.pass;
    std::cout << (v.pass ? "PASS " : "FAIL ") << name << ": " << v.detail << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
