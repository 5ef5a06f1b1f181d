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


// streamforge command line: synth, bench, run.

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "streamforge/bench_harness.hpp"
#include "streamforge/decompose.hpp"
#include "streamforge/driver.hpp"
#include "streamforge/eval.hpp"
#include "streamforge/symbolic.hpp"
#include "streamforge/syntax.hpp"

using namespace streamforge;

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kFailed = 2;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void setup_logging() {
  auto logger = spdlog::stderr_color_mt("streamforge");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("[%l] %v");
  spdlog::set_level(spdlog::level::warn);
  if (const char* env = std::getenv("STREAMFORGE_LOG")) {
    std::string level = env;
    if (level == "error" || level == "info" || level == "debug") {
      spdlog::set_level(spdlog::level::from_str(level));
    } else {
      spdlog::warn("ignoring STREAMFORGE_LOG={}; expected error, info or debug", level);
    }
  }
}

std::vector<Rational> parse_numbers(const std::string& text) {
  std::vector<Rational> out;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) {
    auto q = parse_rational(tok);
    if (!q) throw std::invalid_argument("not a rational number: '" + tok + "'");
    out.push_back(*q);
  }
  return out;
}

struct SearchFlags {
  double timeout = 600;
  int unroll_depth = 3;
  int max_size = 25;
  int tests = 200;
  std::uint64_t seed = 0x5eed;

  void add_to(CLI::App* app) {
    app->add_option("--timeout", timeout, "Per-hole timeout in seconds")->check(CLI::PositiveNumber);
    app->add_option("--unroll-depth", unroll_depth, "Symbolic list length used for mining")->check(CLI::PositiveNumber);
    app->add_option("--max-size", max_size, "Enumeration size budget")->check(CLI::PositiveNumber);
    app->add_option("--tests", tests, "Random test cases per equivalence check")->check(CLI::PositiveNumber);
    app->add_option("--seed", seed, "Random seed");
  }

  SearchConfig config() const {
    SearchConfig cfg;
    cfg.timeout_seconds = timeout;
    cfg.unroll_depth = unroll_depth;
    cfg.max_size = max_size;
    cfg.test_count = tests;
    cfg.seed = seed;
    return cfg;
  }
};

int cmd_synth(const std::string& file, const SearchFlags& flags, const std::string& emit, bool debug) {
  OfflineProgram p;
  try {
    p = parse_program(slurp(file));
  } catch (const ParseError& e) {
    std::cerr << file << ":" << e.what() << "\n";
    return kUsage;
  }
  if (debug) {
    spdlog::set_level(spdlog::level::debug);
    Rfs phi = construct_rfs(p);
    std::cerr << print(phi) << "\n" << debug_dump(decompose(phi, p)) << "\n";
    for (const auto& [id, spec] : decompose(phi, p).holes) {
      try {
        std::cerr << "implicate for hole " << id << ":\n" << find_implicate(phi, spec, true).trace << "\n";
      } catch (const std::exception& e) {
        std::cerr << "implicate for hole " << id << " stopped: " << e.what() << "\n";
      }
    }
  }
  try {
    SynthesisResult r = synthesize(p, flags.config());
    if (emit == "json") {
      std::cout << report_json(r) << "\n";
    } else {
      std::cout << print(r.scheme) << "\n";
      std::cerr << report_text(r);
    }
    return kOk;
  } catch (const SynthesisError& e) {
    std::cerr << "error: " << e.what() << "\n" << report_text(e.holes());
    return kFailed;
  } catch (const EvalError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailed;
  }
}

int cmd_bench(const std::string& dir, const SearchFlags& flags, const std::string& format) {
  BenchReport r = run_bench(dir, flags.config());
  std::cout << (format == "json" ? to_json(r) : to_csv(r));
  std::cerr << "solved " << r.solved_fraction() * 100 << "% of " << r.entries.size() << "\n";
  return r.solved_fraction() == 1.0 ? kOk : kFailed;
}

int cmd_run(const std::string& file, const std::string& stream, const std::string& args) {
  OnlineScheme s;
  std::vector<Rational> xs;
  std::vector<Rational> argv;
  try {
    s = parse_scheme(slurp(file));
    xs = parse_numbers(stream);
    argv = parse_numbers(args);
  } catch (const ParseError& e) {
    std::cerr << file << ":" << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  if (argv.size() != s.extra_args.size()) {
    std::cerr << "error: scheme takes " << s.extra_args.size() << " arguments, got " << argv.size() << "\n";
    return kUsage;
  }
  List out = run_scheme(s, xs, argv);
  for (std::size_t i = 0; i < out.size(); ++i) std::cout << (i ? " " : "") << to_string(out[i]);
  std::cout << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  setup_logging();
  CLI::App app{"streamforge: derive online schemes from offline list programs"};
  app.require_subcommand(1);

  SearchFlags synth_flags;
  std::string synth_file;
  std::string emit = "text";
  bool debug = false;
  auto* synth = app.add_subcommand("synth", "Synthesize an online scheme");
  synth->add_option("file", synth_file, "Offline program (.off)")->required()->check(CLI::ExistingFile);
  synth_flags.add_to(synth);
  synth->add_option("--emit", emit, "Output format")->check(CLI::IsMember({"text", "json"}));
  synth->add_flag("--debug", debug, "Dump signature, sketch and implicate traces");

  SearchFlags bench_flags;
  std::string bench_dir;
  std::string report = "csv";
  auto* bench = app.add_subcommand("bench", "Run every program in a directory");
  bench->add_option("dir", bench_dir, "Directory of .off files")->required()->check(CLI::ExistingDirectory);
  bench_flags.add_to(bench);
  bench->add_option("--report", report, "Report format")->check(CLI::IsMember({"csv", "json"}));

  std::string scheme_file;
  std::string stream;
  std::string scheme_args;
  auto* run = app.add_subcommand("run", "Replay a scheme over a stream");
  run->add_option("scheme", scheme_file, "Scheme file")->required()->check(CLI::ExistingFile);
  run->add_option("--stream", stream, "Whitespace-separated rationals")->required();
  run->add_option("--args", scheme_args, "Values of the extra arguments");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*synth) return cmd_synth(synth_file, synth_flags, emit, debug);
    if (*bench) return cmd_bench(bench_dir, bench_flags, report);
    if (*run) return cmd_run(scheme_file, stream, scheme_args);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
