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


// Enumerative fallback synthesis of online expressions and the
// testing-based equivalence check modulo an RFS.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "streamforge/eval.hpp"
#include "streamforge/ir.hpp"
#include "streamforge/kernels.hpp"
#include "streamforge/mine.hpp"
#include "streamforge/rfs.hpp"
#include "streamforge/sampling.hpp"

namespace streamforge {

struct SearchConfig {
  /// Expression size budget; operators and leaves count one each.
  int max_size = 25;
  double timeout_seconds = 600;
  int test_count = 200;
  std::size_t min_length = 0;
  std::size_t max_length = 12;
  ValueGrid grid;
  std::uint64_t seed = 0x5eed;
  int unroll_depth = 3;
  /// Longest list for the symbolic part of the equivalence check.
  int bounded_max_length = 3;
  /// Cases used as the observational-equivalence signature.
  int signature_cases = 64;
  std::size_t bank_limit = 20000;
  /// Fresh random streams for the final end-to-end check of a scheme.
  int gate_streams = 500;
  Backend backend = Backend::OpenMP;
};

/// Throws std::invalid_argument when a field is out of range.
void validate(const SearchConfig& cfg);

/// One test point: y_i evaluated on xs, and the target on xs++[x].
struct TestCase {
  List xs;
  Rational x;
  std::vector<Rational> args;
  Tuple y;
  Rational target;
};

/// Cases 0 and 1 use lists of length 0 and 1; the rest are random.
std::vector<TestCase> make_test_cases(const Rfs& phi, const Expr& spec, int count, const SearchConfig& cfg,
                                      std::uint64_t seed);

enum class VerificationLevel { Failed, Tested, BoundedVerified };
std::string to_string(VerificationLevel level);

struct EquivReport {
  bool equivalent = false;
  VerificationLevel level = VerificationLevel::Failed;
  /// List lengths at which the canonical forms were shown equal.
  std::vector<int> verified_lengths;
  std::string counterexample;
};

EquivReport check_equiv_detailed(const Rfs& phi, const Expr& candidate, const Expr& spec, const SearchConfig& cfg,
                                 std::uint64_t seed);

bool check_equiv_mod_rfs(const Rfs& phi, const Expr& candidate, const Expr& spec, const SearchConfig& cfg);

/// Operators plus leaves; Func nodes are not counted.
int expr_size(const Expr& e);

struct ScoredCandidate {
  Expr expr;
  std::size_t passed = 0;
  std::size_t total = 0;
};

struct EnumResult {
  std::optional<Expr> expr;
  /// "template", "template+interp", "template+enum" or "enum".
  std::string method;
  VerificationLevel level = VerificationLevel::Failed;
  /// Best partial candidates by passed signature cases.
  std::vector<ScoredCandidate> best;
  std::size_t explored = 0;
  std::string failure;
};

EnumResult enum_synthesize(const Rfs& phi, const Expr& spec, const std::vector<Template>& templates,
                           const SearchConfig& cfg);

}  // namespace streamforge
