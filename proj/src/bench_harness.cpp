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


#include "streamforge/bench_harness.hpp"

#include <nlohmann/json.hpp>
#include <spdlog/spdlog.h>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

#include "streamforge/driver.hpp"
#include "streamforge/sampling.hpp"
#include "streamforge/syntax.hpp"

namespace streamforge {

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) throw std::runtime_error("cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool same_behavior(const OnlineScheme& a, const OnlineScheme& b, const SearchConfig& cfg) {
  Rng rng(derive_seed(cfg.seed, 0xE4EC));
  for (int i = 0; i < 200; ++i) {
    List xs = sample_list(rng, cfg.min_length, cfg.max_length, cfg.grid);
    auto args = sample_values(rng, a.extra_args.size(), cfg.grid);
    if (run_scheme(a, xs, args) != run_scheme(b, xs, args)) return false;
  }
  return true;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

double BenchReport::solved_fraction() const {
  if (entries.empty()) return 0;
  auto n = std::count_if(entries.begin(), entries.end(), [](const BenchEntry& e) { return e.solved; });
  return static_cast<double>(n) / static_cast<double>(entries.size());
}

double BenchReport::total_seconds() const {
  double t = 0;
  for (const auto& e : entries) t += e.seconds;
  return t;
}

BenchReport run_bench(const std::filesystem::path& dir, const SearchConfig& cfg) {
  std::vector<std::filesystem::path> files;
  for (const auto& f : std::filesystem::directory_iterator(dir)) {
    if (f.path().extension() == ".off") files.push_back(f.path());
  }
  std::sort(files.begin(), files.end());
  BenchReport report;
  for (const auto& f : files) {
    BenchEntry e;
    e.name = f.stem().string();
    const auto start = std::chrono::steady_clock::now();
    try {
      OfflineProgram p = parse_program(slurp(f));
      SynthesisResult r = synthesize(p, cfg);
      e.solved = true;
      e.accumulators = r.scheme.arity();
      e.scheme = print(r.scheme);
      std::map<std::string, int> mix;
      for (const auto& h : r.holes) ++mix[h.method];
      for (const auto& [m, n] : mix) e.methods += (e.methods.empty() ? "" : " ") + m + ":" + std::to_string(n);
      auto expected = f;
      expected.replace_extension(".expected");
      if (std::filesystem::exists(expected)) {
        e.matches_expected = same_behavior(r.scheme, parse_scheme(slurp(expected)), cfg);
      }
    } catch (const std::exception& ex) {
      e.failure = ex.what();
    }
    e.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    spdlog::info("{}: {} in {:.3f} s", e.name, e.solved ? "solved" : "failed", e.seconds);
    report.entries.push_back(std::move(e));
  }
  return report;
}

std::string to_csv(const BenchReport& r) {
  std::ostringstream os;
  os << "name,solved,seconds,accumulators,methods,matches_expected,scheme,failure\n";
  for (const auto& e : r.entries) {
    os << csv_field(e.name) << "," << (e.solved ? 1 : 0) << "," << std::fixed << std::setprecision(3) << e.seconds
       << "," << e.accumulators << "," << csv_field(e.methods) << ","
       << (e.matches_expected ? (*e.matches_expected ? "yes" : "no") : "") << "," << csv_field(e.scheme) << ","
       << csv_field(e.failure) << "\n";
  }
  return os.str();
}

std::string to_json(const BenchReport& r) {
  nlohmann::ordered_json j;
  j["solved_fraction"] = r.solved_fraction();
  j["total_seconds"] = r.total_seconds();
  j["entries"] = nlohmann::json::array();
  for (const auto& e : r.entries) {
    nlohmann::ordered_json ej;
    ej["name"] = e.name;
    ej["solved"] = e.solved;
    ej["seconds"] = e.seconds;
    ej["accumulators"] = e.accumulators;
    ej["methods"] = e.methods;
    if (e.matches_expected) ej["matches_expected"] = *e.matches_expected;
    ej["scheme"] = e.scheme;
    ej["failure"] = e.failure;
    j["entries"].push_back(ej);
  }
  return j.dump(2);
}

}  // namespace streamforge
