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


#include "streamforge/driver.hpp"

#include <nlohmann/json.hpp>
#include <omp.h>
#include <spdlog/spdlog.h>

#include <chrono>
#include <exception>
#include <iomanip>
#include <sstream>

#include "streamforge/mine.hpp"
#include "streamforge/sampling.hpp"
#include "streamforge/symbolic.hpp"
#include "streamforge/symeval.hpp"
#include "streamforge/syntax.hpp"

namespace streamforge {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

Rational as_number(const Value& v) {
  if (const auto* q = std::get_if<Rational>(&v)) return *q;
  if (const auto* b = std::get_if<bool>(&v)) return *b ? 1 : 0;
  throw EvalError("program produced a list");
}

}  // namespace

HoleReport synthesize_expr(const Rfs& phi, const Expr& spec, const SearchConfig& cfg) {
  HoleReport r;
  r.spec = print(spec);
  const auto start = Clock::now();

  try {
    auto imp = find_implicate(phi, spec);
    for (const auto& sol : imp.solutions) {
      auto e = to_online_expr(sol, phi.extra_args);
      if (!e) continue;
      auto report = check_equiv_detailed(phi, *e, spec, cfg, derive_seed(cfg.seed, 0x1B));
      if (report.equivalent) {
        r.fill = *e;
        r.method = "implicate";
        r.level = report.level;
        r.seconds = since(start);
        return r;
      }
      spdlog::warn("implicate {} for {} failed testing: {}", print(*e), r.spec, report.counterexample);
    }
    spdlog::debug("no usable implicate for {}", r.spec);
  } catch (const std::exception& e) {
    spdlog::debug("implicate search for {} stopped: {}", r.spec, e.what());
  }

  MineResult mined;
  try {
    mined = mine_with_retry(phi, spec, cfg.unroll_depth);
  } catch (const std::exception& e) {
    mined.failure = e.what();
  }
  if (mined.templates.empty()) spdlog::debug("no templates for {}: {}", r.spec, mined.failure);
  for (const auto& t : mined.templates) spdlog::debug("template for {}: {}", r.spec, print(t));
  r.templates = mined.templates.size();

  auto result = enum_synthesize(phi, spec, mined.templates, cfg);
  r.seconds = since(start);
  r.explored = result.explored;
  r.best = result.best;
  if (result.expr) {
    r.fill = result.expr;
    r.method = result.method;
    r.level = result.level;
  } else {
    r.failure = result.failure;
  }
  return r;
}

OnlineProgramResult synthesize_online_prog(const OfflineProgram& p, const Rfs& phi, const SearchConfig& cfg) {
  Decomposition d = decompose(phi, p);
  std::vector<std::pair<int, Expr>> tasks(d.holes.begin(), d.holes.end());
  std::vector<HoleReport> reports(tasks.size());
  std::exception_ptr error;
  const auto n = static_cast<std::ptrdiff_t>(tasks.size());
  const bool parallel = cfg.backend == Backend::OpenMP && n > 1;
#pragma omp parallel for schedule(dynamic, 1) if (parallel)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      SearchConfig local = cfg;
      local.seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(tasks[i].first));
      reports[i] = synthesize_expr(phi, tasks[i].second, local);
      reports[i].hole = tasks[i].first;
    } catch (...) {
#pragma omp critical(streamforge_driver_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);

  OnlineProgramResult out;
  out.ok = true;
  std::map<int, Expr> fills;
  for (const auto& r : reports) {
    spdlog::info("hole {}: {} {}", r.hole, r.fill ? r.method : "failed", r.fill ? print(*r.fill) : r.failure);
    if (r.fill) {
      fills[r.hole] = *r.fill;
    } else {
      out.ok = false;
    }
  }
  out.holes = std::move(reports);
  if (!out.ok) return out;
  for (const auto& e : d.sketch.body) out.update.push_back(fill_holes(e, fills));
  return out;
}

int gate_mismatches(const OfflineProgram& p, const OnlineScheme& s, int streams, const SearchConfig& cfg,
                    std::uint64_t seed) {
  Rng rng(seed);
  std::vector<List> lists;
  std::vector<std::vector<Rational>> args;
  for (int i = 0; i < streams; ++i) {
    lists.push_back(sample_list(rng, cfg.min_length, cfg.max_length, cfg.grid));
    args.push_back(sample_values(rng, p.extra_args.size(), cfg.grid));
  }
  std::vector<std::uint8_t> bad(static_cast<std::size_t>(streams), 0);
  kernels::parallel_for(lists.size(), cfg.backend, [&](std::size_t i) {
    Rational expected = as_number(eval_offline(p, lists[i], args[i]));
    List out = run_scheme(s, lists[i], args[i]);
    bad[i] = out.back() != expected;
  });
  int n = 0;
  for (auto b : bad) n += b;
  return n;
}

SynthesisResult synthesize(const OfflineProgram& p, const SearchConfig& cfg) {
  validate(cfg);
  const auto start = Clock::now();
  SynthesisResult r;
  r.rfs = construct_rfs(p);
  spdlog::debug("signature:\n{}", print(r.rfs));
  std::vector<Rational> init = synth_initializer(r.rfs);

  auto prog = synthesize_online_prog(p, r.rfs, cfg);
  r.holes = prog.holes;
  if (!prog.ok) {
    std::string msg = "synthesis failed for";
    for (const auto& h : r.holes) {
      if (!h.fill) msg += " hole " + std::to_string(h.hole);
    }
    throw SynthesisError(msg, r.holes);
  }
  r.full.extra_args = p.extra_args;
  r.full.init = init;
  for (const auto& e : prog.update) r.full.update.emplace_back(e);
  r.full.validate();

  auto pruned = prune_unused_detailed(r.full);
  r.scheme = pruned.scheme;
  r.pruned = pruned.removed;

  r.gate_streams = cfg.gate_streams;
  int bad = gate_mismatches(p, r.scheme, cfg.gate_streams, cfg, derive_seed(cfg.seed, 0x6A7E));
  if (bad != 0) {
    throw SynthesisError("internal error: scheme disagrees with the program on " + std::to_string(bad) + " of " +
                             std::to_string(cfg.gate_streams) + " streams",
                         r.holes);
  }
  r.seconds = since(start);
  return r;
}

std::string report_text(const std::vector<HoleReport>& holes, bool with_times) {
  std::ostringstream os;
  for (const auto& h : holes) {
    os << "hole " << h.hole << " " << h.spec << "\n";
    if (h.fill) {
      os << "  " << h.method << " " << to_string(h.level) << " " << print(*h.fill);
    } else {
      os << "  failed: " << h.failure;
    }
    if (with_times) os << " (" << std::fixed << std::setprecision(3) << h.seconds << " s)";
    os << "\n";
    if (!h.fill) {
      os << "  templates " << h.templates << ", explored " << h.explored << "\n";
      for (const auto& b : h.best) {
        os << "  candidate " << print(b.expr) << " passes " << b.passed << "/" << b.total << "\n";
      }
    }
  }
  return os.str();
}

std::string report_text(const SynthesisResult& r, bool with_times) {
  std::ostringstream os;
  os << report_text(r.holes, with_times);
  if (!r.pruned.empty()) {
    os << "pruned";
    for (int i : r.pruned) os << " y" << i;
    os << "\n";
  }
  os << "gate " << r.gate_streams << " streams passed";
  if (with_times) os << ", total " << std::fixed << std::setprecision(3) << r.seconds << " s";
  os << "\n";
  return os.str();
}

std::string report_json(const SynthesisResult& r) {
  nlohmann::ordered_json j;
  j["scheme"] = nlohmann::json::parse(to_json(r.scheme));
  j["text"] = print(r.scheme);
  j["holes"] = nlohmann::json::array();
  for (const auto& h : r.holes) {
    nlohmann::ordered_json hj;
    hj["hole"] = h.hole;
    hj["spec"] = h.spec;
    hj["method"] = h.method;
    hj["fill"] = h.fill ? print(*h.fill) : "";
    hj["verification"] = to_string(h.level);
    hj["seconds"] = h.seconds;
    j["holes"].push_back(hj);
  }
  j["pruned"] = r.pruned;
  j["gate_streams"] = r.gate_streams;
  j["seconds"] = r.seconds;
  return j.dump(2);
}

}  // namespace streamforge
