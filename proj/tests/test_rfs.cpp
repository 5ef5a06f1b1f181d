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

#include "helpers.hpp"
#include "streamforge/rfs.hpp"

using namespace streamforge;
using test::list;

TEST_CASE("signature of the mean program") {
  Rfs phi = construct_rfs(parse_program(test::kMean));
  REQUIRE(phi.size() == 3);
  CHECK(phi.at(2) == parse_offline_expr("(foldl + 0 xs)"));
  CHECK(phi.at(3) == parse_offline_expr("(length xs)"));
  CHECK(phi.length_accumulator() == 3);
  CHECK(eval_rfs(phi, list({"1", "2", "6"}), {}) == list({"3", "9", "3"}));
  CHECK(synth_initializer(phi) == list({"0", "0", "0"}));
}

TEST_CASE("initializers") {
  CHECK(synth_initializer(construct_rfs(parse_program("(program (xs) (foldl min 1000 xs))"))) == list({"1000"}));
  CHECK(synth_initializer(construct_rfs(parse_program(test::kCountAbove))) == list({"0"}));
  CHECK(synth_initializer(construct_rfs(parse_program("(program (xs) 7)"))) == list({"7"}));
  CHECK_THROWS_AS(synth_initializer(construct_rfs(parse_program("(program (xs t) (+ t (length xs)))"))),
                  EvalError);
}

TEST_CASE("variance signature has four entries") {
  Rfs phi = construct_rfs(parse_program(test::kVariance));
  CHECK(phi.size() == 4);
  CHECK(phi.length_accumulator() == 3);
  // xs = [1 2 3 4]: variance 5/4, sum 10, length 4, M2 5.
  CHECK(eval_rfs(phi, list({"1", "2", "3", "4"}), {}) == list({"5/4", "10", "4", "5"}));
}

TEST_CASE("pruning removes unread accumulators") {
  OnlineScheme s = parse_scheme("(scheme (init 0 0 0) (update (y1 y2 y3) x (tuple (+ y1 x) (+ y2 1) (+ y3 y1))))");
  auto r = prune_unused_detailed(s);
  CHECK(r.scheme.arity() == 1);
  CHECK(r.kept == std::vector<int>{1});
  CHECK(r.removed == std::vector<int>{2, 3});

  OnlineScheme chain = parse_scheme("(scheme (init 0 0 0) (update (y1 y2 y3) x (tuple (+ y2 x) (+ y3 1) (+ y3 1))))");
  auto c = prune_unused_detailed(chain);
  CHECK(c.scheme.arity() == 3);
  CHECK(print(c.scheme) == print(chain));

  OnlineScheme gap = parse_scheme("(scheme (init 5 6 7) (update (y1 y2 y3) x (tuple (+ y3 x) (+ y2 1) (+ y3 1))))");
  auto g = prune_unused_detailed(gap);
  CHECK(print(g.scheme) == "(scheme (init 5 7) (update (y1 y2) x (tuple (+ y2 x) (+ y2 1))))");
}
