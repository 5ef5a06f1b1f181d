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


// Top-level pipeline: signature, sketch, per-hole synthesis, assembly,
// pruning and the final end-to-end gate.

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "streamforge/decompose.hpp"
#include "streamforge/enumsynth.hpp"
#include "streamforge/ir.hpp"
#include "streamforge/rfs.hpp"

namespace streamforge {

struct HoleReport {
  int hole = 0;
  std::string spec;
  std::optional<Expr> fill;
  /// "implicate", "template", "template+interp", "template+enum" or "enum".
  std::string method;
  VerificationLevel level = VerificationLevel::Failed;
  double seconds = 0;
  std::size_t templates = 0;
  std::size_t explored = 0;
  std::vector<ScoredCandidate> best;
  std::string failure;
};

struct SynthesisResult {
  OnlineScheme scheme;
  /// Scheme before prune_unused.
  OnlineScheme full;
  Rfs rfs;
  std::vector<HoleReport> holes;
  /// Original indices of the accumulators prune_unused removed.
  std::vector<int> pruned;
  double seconds = 0;
  int gate_streams = 0;
};

class SynthesisError : public std::runtime_error {
 public:
  SynthesisError(const std::string& message, std::vector<HoleReport> holes)
      : std::runtime_error(message), holes_(std::move(holes)) {}
  const std::vector<HoleReport>& holes() const { return holes_; }

 private:
  std::vector<HoleReport> holes_;
};

/// Implicate first, then mined templates and enumeration. Never throws on
/// search failure; the report carries the diagnostics.
HoleReport synthesize_expr(const Rfs& phi, const Expr& spec, const SearchConfig& cfg);

struct OnlineProgramResult {
  std::vector<Expr> update;
  std::vector<HoleReport> holes;
  bool ok = false;
};

/// Holes are solved independently, in parallel under the OpenMP backend.
/// Hole k searches with seed derive_seed(cfg.seed, k).
OnlineProgramResult synthesize_online_prog(const OfflineProgram& p, const Rfs& phi, const SearchConfig& cfg);

/// Throws SynthesisError when a hole fails or the final gate rejects.
SynthesisResult synthesize(const OfflineProgram& p, const SearchConfig& cfg);

/// Number of streams on which the scheme's last output differs from the
/// program, out of `streams` fresh random ones.
int gate_mismatches(const OfflineProgram& p, const OnlineScheme& s, int streams, const SearchConfig& cfg,
                    std::uint64_t seed);

/// Human-readable summary: one line per hole plus pruning and timing.
std::string report_text(const SynthesisResult& r, bool with_times = true);
std::string report_text(const std::vector<HoleReport>& holes, bool with_times = true);
std::string report_json(const SynthesisResult& r);

}  // namespace streamforge
