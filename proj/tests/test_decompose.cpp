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
#include "streamforge/decompose.hpp"

using namespace streamforge;

TEST_CASE("mean sketch") {
  OfflineProgram p = parse_program(test::kMean);
  Rfs phi = construct_rfs(p);
  Decomposition d = decompose(phi, p);
  REQUIRE(d.sketch.arity() == 3);
  REQUIRE(d.holes.size() == 2);
  std::set<std::string> specs;
  for (const auto& [id, spec] : d.holes) specs.insert(print(spec));
  CHECK(specs == std::set<std::string>{"(foldl + 0 xs)", "(length xs)"});
  // The body shares the holes of the sum and the length entries.
  CHECK(d.sketch.body[0] == Expr::apply(Builtin::Div, {d.sketch.body[1], d.sketch.body[2]}));
  CHECK(d.sketch.body[1].kind() == NodeKind::Hole);
}

TEST_CASE("filling holes with specs restores the entries") {
  OfflineProgram p = parse_program(test::kVariance);
  Rfs phi = construct_rfs(p);
  Decomposition d = decompose(phi, p);
  std::map<int, Expr> fills(d.holes.begin(), d.holes.end());
  for (std::size_t i = 0; i < phi.size(); ++i) CHECK(fill_holes(d.sketch.body[i], fills) == phi.entries[i]);
  CHECK(debug_dump(d).find("(hole 1") != std::string::npos);
}

TEST_CASE("hole-free sketch") {
  OfflineProgram p = parse_program("(program (xs) 7)");
  Decomposition d = decompose(construct_rfs(p), p);
  CHECK(d.holes.empty());
  CHECK(d.sketch.body[0] == Expr::constant(7));
}
