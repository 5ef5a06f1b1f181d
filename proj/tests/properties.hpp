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


// Randomized property checks shared by property_tests and acceptance.

#pragma once

#include <cstdint>
#include <string>
#include <utility>

#include "streamforge/sampling.hpp"

namespace streamforge::props {

struct Outcome {
  explicit Outcome(std::string n) : name(std::move(n)) {}

  std::string name;
  int cases = 0;
  int failures = 0;
  int skipped = 0;
  std::string first_failure;

  bool ok(int min_cases = 200) const { return failures == 0 && cases >= min_cases; }
  std::string summary() const;
};

/// A consumer over a map/filter chain of xs: foldl or length.
std::string random_list_expr(Rng& rng);
/// A program body combining one or two random list expressions.
std::string random_program(Rng& rng);

Outcome axiom_validity(std::uint64_t seed, int cases);
Outcome implicate_soundness(std::uint64_t seed, int cases);
/// Every scheme synthesized for the corpus, `cases` random steps each.
Outcome inductiveness(const std::string& corpus_dir, std::uint64_t seed, int cases);
Outcome decompose_resubstitution(std::uint64_t seed, int cases);
Outcome unroll_vs_concrete(std::uint64_t seed, int cases);
/// Front half of the pipeline on random programs, plus full synthesis of
/// the corpus, each run twice and compared as text.
Outcome determinism(const std::string& corpus_dir, std::uint64_t seed, int cases);

}  // namespace streamforge::props
