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


// Template solving by sampling per-length linear systems and
// interpolating each unknown as a polynomial in the length accumulator.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "streamforge/enumsynth.hpp"
#include "streamforge/mine.hpp"
#include "streamforge/rfs.hpp"
#include "streamforge/symterm.hpp"

namespace streamforge {

struct SamplePlan {
  int sample_length_count = 11;
  /// Candidate lengths, tried in order; empty means 1, 2, ... max_length.
  std::vector<int> lengths;
  int retries = 5;
  int max_length = 30;
};

using Point2 = std::pair<long, Rational>;

struct UnknownPoints {
  /// Unknown id to (n, value) pairs.
  std::map<int, std::vector<Point2>> points;
  std::vector<int> lengths;
  /// Lengths dropped because every retry gave a singular system.
  std::vector<int> skipped;
};

struct SampleOutcome {
  std::optional<UnknownPoints> points;
  bool not_applicable = false;
  std::string failure;
};

SampleOutcome sample_points(const Expr& spec, const Rfs& phi, const Template& t, const SamplePlan& plan,
                            std::uint64_t seed, const ValueGrid& grid = {});

/// Dense univariate polynomial, coeffs[i] multiplies n^i.
struct UniPoly {
  std::vector<Rational> coeffs;

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  Rational operator()(const Rational& n) const;
  SymTerm in_var(const std::string& var) const;
  std::string to_string(const std::string& var = "n") const;
  bool operator==(const UniPoly& o) const { return coeffs == o.coeffs; }
};

/// Newton interpolation; throws std::invalid_argument on repeated
/// abscissae or fewer than one point.
UniPoly interpolate(const std::vector<Point2>& points);

/// Exact solution of a x = b; nullopt unless the solution is unique and
/// consistent.
std::optional<std::vector<Rational>> solve_linear_system(std::vector<std::vector<Rational>> a,
                                                         std::vector<Rational> b);

struct TemplateSolution {
  std::optional<Expr> expr;
  /// Interpolated polynomial per unknown.
  std::vector<UniPoly> polys;
  /// The instantiated template as a canonical term.
  SymTerm symbolic;
  VerificationLevel level = VerificationLevel::Failed;
  bool not_applicable = false;
  std::string failure;
};

TemplateSolution solve_template(const Expr& spec, const Rfs& phi, const Template& t, const SamplePlan& plan,
                                const SearchConfig& cfg);

}  // namespace streamforge
