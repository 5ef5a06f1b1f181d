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


// Random test data drawn from a grid of small exact rationals.

#pragma once

#include <cstdint>
#include <random>

#include "streamforge/rational.hpp"

namespace streamforge {

/// Values k/denominator for k in [lo, hi].
struct ValueGrid {
  long lo = -10;
  long hi = 10;
  long denominator = 2;
};

using Rng = std::mt19937_64;

/// Mixes a base seed with a stream id so that independent tasks get
/// independent, reproducible generators.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

Rational sample_value(Rng& rng, const ValueGrid& grid = {});
List sample_list(Rng& rng, std::size_t min_len, std::size_t max_len, const ValueGrid& grid = {});
List sample_list_of_length(Rng& rng, std::size_t len, const ValueGrid& grid = {});
std::vector<Rational> sample_values(Rng& rng, std::size_t count, const ValueGrid& grid = {});

}  // namespace streamforge
