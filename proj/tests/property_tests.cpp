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

#include "properties.hpp"

using namespace streamforge;

TEST_CASE("axioms hold on concrete lists") {
  auto o = props::axiom_validity(101, 300);
  INFO(o.summary());
  CHECK(o.ok());
}

TEST_CASE("implicates are sound") {
  auto o = props::implicate_soundness(202, 300);
  INFO(o.summary());
  CHECK(o.ok());
}

TEST_CASE("emitted schemes are inductive") {
  auto o = props::inductiveness(STREAMFORGE_CORPUS_DIR "/bench", 303, 200);
  INFO(o.summary());
  CHECK(o.ok());
}

TEST_CASE("decomposition re-substitution") {
  auto o = props::decompose_resubstitution(404, 300);
  INFO(o.summary());
  CHECK(o.ok());
}

TEST_CASE("unrolling agrees with evaluation") {
  auto o = props::unroll_vs_concrete(505, 300);
  INFO(o.summary());
  CHECK(o.ok());
}

TEST_CASE("pipeline output is deterministic") {
  auto o = props::determinism(STREAMFORGE_CORPUS_DIR "/bench", 606, 200);
  INFO(o.summary());
  CHECK(o.ok());
}
