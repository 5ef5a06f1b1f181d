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


#include "properties.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "streamforge/decompose.hpp"
#include "streamforge/driver.hpp"
#include "streamforge/eval.hpp"
#include "streamforge/mine.hpp"
#include "streamforge/rfs.hpp"
#include "streamforge/symbolic.hpp"
#include "streamforge/symeval.hpp"
#include "streamforge/syntax.hpp"

namespace streamforge::props {

namespace {

int pick(Rng& rng, int n) { return static_cast<int>(std::uniform_int_distribution<int>(0, n - 1)(rng)); }

std::string constant(Rng& rng) { return std::to_string(pick(rng, 6) - 2); }

std::string scalar(Rng& rng, const std::vector<std::string>& vars, int depth) {
  if (depth == 0 || pick(rng, 3) == 0) {
    int k = pick(rng, static_cast<int>(vars.size()) + 1);
    return k < static_cast<int>(vars.size()) ? vars[static_cast<std::size_t>(k)] : constant(rng);
  }
  static const char* ops[] = {"+", "-", "*", "max", "min"};
  return std::string("(") + ops[pick(rng, 5)] + " " + scalar(rng, vars, depth - 1) + " " +
         scalar(rng, vars, depth - 1) + ")";
}

std::string predicate(Rng& rng) {
  static const char* ops[] = {"<", ">", "<="};
  return std::string("(") + ops[pick(rng, 3)] + " x " + constant(rng) + ")";
}

std::string chain(Rng& rng, int depth) {
  if (depth == 0 || pick(rng, 2) == 0) return "xs";
  if (pick(rng, 2) == 0) return "(map (lambda (x) " + scalar(rng, {"x"}, 1) + ") " + chain(rng, depth - 1) + ")";
  return "(filter (lambda (x) " + predicate(rng) + ") " + chain(rng, depth - 1) + ")";
}

std::string fmt_list(const List& xs) {
  std::string s = "[";
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? " " : "") + to_string(xs[i]);
  return s + "]";
}

void fail(Outcome& o, const std::string& what) {
  if (o.failures++ == 0) o.first_failure = what;
}

List snoc(const List& xs, const Rational& x) {
  List out = xs;
  out.push_back(x);
  return out;
}

std::vector<std::filesystem::path> corpus_files(const std::string& dir) {
  std::vector<std::filesystem::path> files;
  for (const auto& f : std::filesystem::directory_iterator(dir)) {
    if (f.path().extension() == ".off") files.push_back(f.path());
  }
  std::sort(files.begin(), files.end());
  return files;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

SearchConfig quick_config() {
  SearchConfig cfg;
  cfg.timeout_seconds = 60;
  return cfg;
}

}  // namespace

std::string Outcome::summary() const {
  std::string s = name + ": " + std::to_string(cases) + " cases, " + std::to_string(failures) + " failures";
  if (skipped) s += ", " + std::to_string(skipped) + " skipped";
  if (!first_failure.empty()) s += " (first: " + first_failure + ")";
  return s;
}

std::string random_list_expr(Rng& rng) {
  std::string c = chain(rng, 2);
  switch (pick(rng, 4)) {
    case 0: return "(length " + c + ")";
    case 1: return "(foldl + 0 " + c + ")";
    case 2: return "(foldl max -100 " + c + ")";
    default: return "(foldl (lambda (acc x) " + scalar(rng, {"acc", "x"}, 2) + ") " + constant(rng) + " " + c + ")";
  }
}

std::string random_program(Rng& rng) {
  std::string body;
  switch (pick(rng, 4)) {
    case 0: body = random_list_expr(rng); break;
    case 1: body = "(+ " + random_list_expr(rng) + " " + random_list_expr(rng) + ")"; break;
    case 2: body = "(* " + random_list_expr(rng) + " " + random_list_expr(rng) + ")"; break;
    default: body = "(/ " + random_list_expr(rng) + " " + random_list_expr(rng) + ")"; break;
  }
  return "(program (xs) " + body + ")";
}

Outcome axiom_validity(std::uint64_t seed, int cases) {
  Outcome o("axiom validity");
  Rng rng(seed);
  for (int attempt = 0; o.cases < cases && attempt < cases * 20; ++attempt) {
    Expr e = snoc_substitute(parse_offline_expr(random_list_expr(rng)));
    auto ax = axiom_for(e);
    if (!ax) {
      ++o.skipped;
      continue;
    }
    List xs = sample_list(rng, 0, 8);
    Rational x = sample_value(rng);
    EvalEnv env;
    env.xs = &xs;
    env.x = &x;
    Value lhs = eval(ax->lhs, env);
    Value rhs = eval(ax->rhs, env);
    ++o.cases;
    if (lhs != rhs) fail(o, print(ax->lhs) + " on " + fmt_list(xs) + " x=" + to_string(x));
  }
  return o;
}

Outcome implicate_soundness(std::uint64_t seed, int cases) {
  Outcome o("implicate soundness");
  Rng rng(seed);
  for (int attempt = 0; o.cases < cases && attempt < cases * 20; ++attempt) {
    OfflineProgram p = parse_program(random_program(rng));
    Rfs phi = construct_rfs(p);
    for (const auto& [id, spec] : decompose(phi, p).holes) {
      std::vector<SymTerm> sols;
      try {
        sols = find_implicate(phi, spec).solutions;
      } catch (const std::exception&) {
        ++o.skipped;
        continue;
      }
      for (const auto& s : sols) {
        auto e = to_online_expr(s, {});
        if (!e) continue;
        for (int t = 0; t < 10; ++t) {
          List xs = sample_list(rng, 0, 8);
          Rational x = sample_value(rng);
          Tuple y = eval_rfs(phi, xs, {});
          EvalEnv env;
          env.x = &x;
          env.accums = y;
          List ext = snoc(xs, x);
          EvalEnv spec_env;
          spec_env.xs = &ext;
          ++o.cases;
          if (eval_number(*e, env) != eval_number(spec, spec_env)) {
            fail(o, print(*e) + " for " + print(spec) + " on " + fmt_list(xs) + " x=" + to_string(x));
          }
        }
      }
    }
  }
  return o;
}

Outcome inductiveness(const std::string& corpus_dir, std::uint64_t seed, int cases) {
  Outcome o("inductiveness");
  Rng rng(seed);
  for (const auto& f : corpus_files(corpus_dir)) {
    OfflineProgram p = parse_program(slurp(f));
    SynthesisResult r;
    try {
      r = synthesize(p, quick_config());
    } catch (const SynthesisError&) {
      ++o.skipped;
      continue;
    }
    for (int t = 0; t < cases; ++t) {
      auto args = sample_values(rng, p.extra_args.size());
      ArgBinding binding = bind_args(p.extra_args, args);
      List xs = sample_list(rng, 0, 12);
      Rational x = sample_value(rng);
      Tuple next = step_scheme(r.full, eval_rfs(r.rfs, xs, binding), x, binding);
      ++o.cases;
      if (next != eval_rfs(r.rfs, snoc(xs, x), binding)) {
        fail(o, f.stem().string() + " on " + fmt_list(xs) + " x=" + to_string(x));
      }
    }
  }
  return o;
}

Outcome decompose_resubstitution(std::uint64_t seed, int cases) {
  Outcome o("decompose re-substitution");
  Rng rng(seed);
  while (o.cases < cases) {
    OfflineProgram p = parse_program(random_program(rng));
    Rfs phi = construct_rfs(p);
    Decomposition d = decompose(phi, p);
    for (int t = 0; t < 5; ++t) {
      List xs = sample_list(rng, 0, 8);
      Rational x = sample_value(rng);
      List ext = snoc(xs, x);
      EvalEnv spec_env;
      spec_env.xs = &ext;
      std::vector<Rational> holes(d.holes.empty() ? 1 : static_cast<std::size_t>(d.holes.rbegin()->first) + 1);
      for (const auto& [id, spec] : d.holes) holes[static_cast<std::size_t>(id)] = eval_number(spec, spec_env);
      Tuple y = eval_rfs(phi, xs, {});
      Tuple expected = eval_rfs(phi, ext, {});
      EvalEnv env;
      env.x = &x;
      env.accums = y;
      env.holes = holes;
      for (std::size_t i = 0; i < d.sketch.body.size(); ++i) {
        ++o.cases;
        if (eval_number(d.sketch.body[i], env) != expected[i]) {
          fail(o, print(p) + " component " + std::to_string(i + 1) + " on " + fmt_list(xs));
        }
      }
    }
  }
  return o;
}

Outcome unroll_vs_concrete(std::uint64_t seed, int cases) {
  Outcome o("unroll vs concrete");
  Rng rng(seed);
  while (o.cases < cases) {
    OfflineProgram p = parse_program(random_program(rng));
    const int len = pick(rng, 5);
    UnrollResult u;
    try {
      u = unroll(p.body, len);
    } catch (const SymEvalError&) {
      ++o.skipped;
      continue;
    }
    List xs = sample_list_of_length(rng, static_cast<std::size_t>(len));
    Point point = [&](const std::string& name) -> std::optional<Rational> {
      for (int i = 1; i <= len; ++i) {
        if (name == elem_var_name("%x", i)) return xs[static_cast<std::size_t>(i - 1)];
      }
      return std::nullopt;
    };
    bool singular = false;
    for (const auto& c : u.side.nonzero) {
      auto v = c.evaluate(point);
      if (!v || *v == 0) singular = true;
    }
    auto sym = u.term.evaluate(point);
    if (singular || !sym) {
      ++o.skipped;
      continue;
    }
    ++o.cases;
    EvalEnv env;
    env.xs = &xs;
    Rational concrete = eval_number(p.body, env);
    if (*sym != concrete) fail(o, print(p) + " on " + fmt_list(xs));
  }
  return o;
}

Outcome determinism(const std::string& corpus_dir, std::uint64_t seed, int cases) {
  Outcome o("determinism");
  auto front = [](const std::string& text) {
    OfflineProgram p = parse_program(text);
    Rfs phi = construct_rfs(p);
    Decomposition d = decompose(phi, p);
    std::string out = print(phi) + debug_dump(d);
    for (const auto& [id, spec] : d.holes) {
      try {
        for (const auto& s : find_implicate(phi, spec).solutions) out += s.to_string() + "\n";
        for (const auto& t : mine_expressions(phi, spec, 2).templates) out += print(t) + "\n";
      } catch (const std::exception& e) {
        out += e.what();
      }
    }
    return out;
  };
  Rng rng(seed);
  for (int i = 0; i < cases; ++i) {
    std::string text = random_program(rng);
    ++o.cases;
    if (front(text) != front(text)) fail(o, text);
  }
  auto full = [&] {
    std::string out;
    for (const auto& f : corpus_files(corpus_dir)) {
      try {
        auto r = synthesize(parse_program(slurp(f)), quick_config());
        out += print(r.scheme) + "\n" + report_text(r, false);
      } catch (const SynthesisError& e) {
        out += e.what();
      }
    }
    return out;
  };
  ++o.cases;
  if (full() != full()) fail(o, "corpus synthesis differs between runs");
  return o;
}

}  // namespace streamforge::props
