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


// Benchmark harness over a directory of .off programs.

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "streamforge/enumsynth.hpp"

namespace streamforge {

struct BenchEntry {
  std::string name;
  bool solved = false;
  double seconds = 0;
  std::size_t accumulators = 0;
  /// Method counts, e.g. "implicate:2 template+interp:1".
  std::string methods;
  std::string scheme;
  std::string failure;
  /// Behavioral agreement with a sibling .expected scheme, when one exists.
  std::optional<bool> matches_expected;
};

struct BenchReport {
  std::vector<BenchEntry> entries;
  double solved_fraction() const;
  double total_seconds() const;
};

/// Runs synthesize on every *.off file in sorted order.
BenchReport run_bench(const std::filesystem::path& dir, const SearchConfig& cfg);

std::string to_csv(const BenchReport& r);
std::string to_json(const BenchReport& r);

}  // namespace streamforge
