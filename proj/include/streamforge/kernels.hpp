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


// Column kernels over test cases. Every kernel has a serial reference
// path and an OpenMP path; both produce identical results.

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "streamforge/ir.hpp"
#include "streamforge/rational.hpp"

namespace streamforge {

enum class Backend { Serial, OpenMP };

using Column = std::vector<Rational>;
using Mask = std::vector<std::uint8_t>;

namespace kernels {

/// Rows below this count always run serially.
inline constexpr std::size_t kParallelThreshold = 128;

int max_threads();

/// Runs fn(0..n-1). The first exception thrown by any iteration is
/// rethrown after the loop.
void parallel_for(std::size_t n, Backend backend, const std::function<void(std::size_t)>& fn);

/// Elementwise + - * / (safe) min max.
Column binary(Builtin op, const Column& a, const Column& b, Backend backend);
/// Elementwise neg, abs.
Column unary(Builtin op, const Column& a, Backend backend);
Column power(const Column& a, unsigned exponent, Backend backend);
/// Elementwise < <= > >= =.
Mask compare(Builtin op, const Column& a, const Column& b, Backend backend);
/// Elementwise and / or.
Mask logic(Builtin op, const Mask& a, const Mask& b, Backend backend);
Mask negate(const Mask& a, Backend backend);
Column select(const Mask& cond, const Column& a, const Column& b, Backend backend);

std::size_t count_matches(const Column& a, const Column& b, Backend backend);
std::size_t hash_column(const Column& a);
std::size_t hash_mask(const Mask& a);
/// Largest numerator or denominator bit length in the column.
std::size_t max_bits(const Column& a);

/// sum_i coeffs[i] * terms[i] elementwise.
Column linear_combination(const std::vector<Rational>& coeffs, const std::vector<const Column*>& terms,
                          std::size_t rows, Backend backend);

}  // namespace kernels
}  // namespace streamforge
