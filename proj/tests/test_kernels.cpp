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

#include <doctest.h>

#include <stdexcept>

#include "streamforge/kernels.hpp"
#include "streamforge/sampling.hpp"

using namespace streamforge;

namespace {

Column random_column(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  return sample_values(rng, n, ValueGrid{-4, 4, 2});
}

}  // namespace

TEST_CASE("serial and OpenMP kernels agree") {
  const std::size_t n = 1000;
  Column a = random_column(n, 1), b = random_column(n, 2);
  for (Builtin op : {Builtin::Add, Builtin::Sub, Builtin::Mul, Builtin::Div, Builtin::Min, Builtin::Max}) {
    CHECK(kernels::binary(op, a, b, Backend::Serial) == kernels::binary(op, a, b, Backend::OpenMP));
  }
  for (Builtin op : {Builtin::Neg, Builtin::Abs}) {
    CHECK(kernels::unary(op, a, Backend::Serial) == kernels::unary(op, a, Backend::OpenMP));
  }
  CHECK(kernels::power(a, 3, Backend::Serial) == kernels::power(a, 3, Backend::OpenMP));
  Mask m = kernels::compare(Builtin::Lt, a, b, Backend::Serial);
  CHECK(m == kernels::compare(Builtin::Lt, a, b, Backend::OpenMP));
  CHECK(kernels::select(m, a, b, Backend::Serial) == kernels::select(m, a, b, Backend::OpenMP));
  CHECK(kernels::count_matches(a, b, Backend::Serial) == kernels::count_matches(a, b, Backend::OpenMP));
  CHECK(kernels::linear_combination({2, -1}, {&a, &b}, n, Backend::Serial) ==
        kernels::linear_combination({2, -1}, {&a, &b}, n, Backend::OpenMP));
}

TEST_CASE("elementwise semantics") {
  Column a = {Rational(1), Rational(-2), Rational(3)};
  Column z = {Rational(0), Rational(0), Rational(4)};
  CHECK(kernels::binary(Builtin::Div, a, z, Backend::Serial) == Column{0, 0, Rational(3, 4)});
  CHECK(kernels::binary(Builtin::Min, a, z, Backend::Serial) == Column{0, -2, 3});
  CHECK(kernels::compare(Builtin::Eq, a, a, Backend::Serial) == Mask{1, 1, 1});
  CHECK(kernels::logic(Builtin::And, Mask{1, 0, 1}, Mask{1, 1, 0}, Backend::Serial) == Mask{1, 0, 0});
  CHECK(kernels::negate(Mask{1, 0}, Backend::Serial) == Mask{0, 1});
  CHECK(kernels::count_matches(a, z, Backend::Serial) == 0);
  CHECK(kernels::hash_column(a) == kernels::hash_column(Column(a)));
  CHECK_THROWS_AS(kernels::binary(Builtin::Add, a, Column{1}, Backend::Serial), std::invalid_argument);
}

TEST_CASE("parallel_for rethrows") {
  for (Backend b : {Backend::Serial, Backend::OpenMP}) {
    std::vector<int> hits(500, 0);
    kernels::parallel_for(hits.size(), b, [&](std::size_t i) { hits[i] = 1; });
    CHECK(std::count(hits.begin(), hits.end(), 1) == 500);
    CHECK_THROWS_AS(kernels::parallel_for(500, b,
                                          [](std::size_t i) {
                                            if (i == 321) throw std::runtime_error("boom");
                                          }),
                    std::runtime_error);
  }
}
