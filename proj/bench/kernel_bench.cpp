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

// Serial versus OpenMP kernels: column arithmetic and whole-test-set
// equivalence checking.

#include <benchmark/benchmark.h>
#include <spdlog/spdlog.h>

#include "streamforge/enumsynth.hpp"
#include "streamforge/kernels.hpp"
#include "streamforge/sampling.hpp"
#include "streamforge/syntax.hpp"

using namespace streamforge;

namespace {

Backend backend_of(const benchmark::State& state) {
  return state.range(1) == 0 ? Backend::Serial : Backend::OpenMP;
}

void BM_ColumnMulAdd(benchmark::State& state) {
  Rng rng(1);
  const auto n = static_cast<std::size_t>(state.range(0));
  Column a = sample_values(rng, n), b = sample_values(rng, n);
  const Backend be = backend_of(state);
  for (auto _ : state) {
    Column c = kernels::binary(Builtin::Mul, a, b, be);
    benchmark::DoNotOptimize(kernels::binary(Builtin::Add, c, a, be));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_ColumnDivide(benchmark::State& state) {
  Rng rng(2);
  const auto n = static_cast<std::size_t>(state.range(0));
  Column a = sample_values(rng, n), b = sample_values(rng, n);
  const Backend be = backend_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::binary(Builtin::Div, a, b, be));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_EquivalenceCheck(benchmark::State& state) {
  spdlog::set_level(spdlog::level::warn);
  Rfs phi = construct_rfs(parse_program(
      "(program (xs) (let (s (foldl + 0 xs)) (let (avg (/ s (length xs)))"
      " (/ (foldl (lambda (acc x) (+ acc (pow (- x avg) 2))) 0 xs) (length xs)))))"));
  Expr candidate = parse_online_expr("(+ x y2)").expr();
  SearchConfig cfg;
  cfg.test_count = static_cast<int>(state.range(0));
  cfg.bounded_max_length = -1;
  cfg.backend = backend_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(check_equiv_detailed(phi, candidate, phi.at(2), cfg, 9).equivalent);
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_ColumnMulAdd)->ArgsProduct({{1 << 12, 1 << 16}, {0, 1}})->ArgNames({"rows", "omp"});
BENCHMARK(BM_ColumnDivide)->ArgsProduct({{1 << 12, 1 << 16}, {0, 1}})->ArgNames({"rows", "omp"});
BENCHMARK(BM_EquivalenceCheck)->ArgsProduct({{200, 2000}, {0, 1}})->ArgNames({"cases", "omp"})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
