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
#include "streamforge/enumsynth.hpp"

using namespace streamforge;

namespace {

Rfs mean2() {
  Rfs phi;
  phi.entries = {parse_offline_expr("(/ (foldl + 0 xs) (length xs))"), parse_offline_expr("(length xs)")};
  return phi;
}

Expr online(const std::string& text, const std::vector<std::string>& args = {}) {
  return parse_online_expr(text, args).expr();
}

SearchConfig small() {
  SearchConfig cfg;
  cfg.timeout_seconds = 60;
  return cfg;
}

}  // namespace

TEST_CASE("equivalence modulo the signature") {
  Expr sum = parse_offline_expr("(foldl + 0 xs)");
  auto good = check_equiv_detailed(mean2(), online("(+ (* y1 y2) x)"), sum, small(), 7);
  CHECK(good.equivalent);
  CHECK(good.level == VerificationLevel::BoundedVerified);
  auto bad = check_equiv_detailed(mean2(), online("(+ y1 x)"), sum, small(), 7);
  CHECK_FALSE(bad.equivalent);
  CHECK_FALSE(bad.counterexample.empty());

  Rfs var = construct_rfs(parse_program(test::kVariance));
  CHECK(check_equiv_mod_rfs(var, online("(+ y2 x)"), var.at(2), small()));
  CHECK_FALSE(check_equiv_mod_rfs(var, online("(+ y3 x)"), var.at(2), small()));
}

TEST_CASE("indicator candidates are tested but not bounded-verified") {
  Rfs phi = construct_rfs(parse_program("(program (xs) (foldl max -1000 xs))"));
  auto r = check_equiv_detailed(phi, online("(max x y1)"), phi.at(1), small(), 3);
  CHECK(r.equivalent);
  CHECK(r.level != VerificationLevel::Failed);
}

TEST_CASE("test cases cover empty and singleton lists") {
  Rfs phi = construct_rfs(parse_program(test::kMean));
  auto cases = make_test_cases(phi, phi.at(2), 10, small(), 1);
  REQUIRE(cases.size() == 10);
  CHECK(cases[0].xs.empty());
  CHECK(cases[1].xs.size() == 1);
  for (const auto& c : cases) {
    Rational s = 0;
    for (const auto& v : c.xs) s += v;
    CHECK(c.target == s + c.x);
  }
}

TEST_CASE("enumeration finds small updates") {
  Rfs var = construct_rfs(parse_program(test::kVariance));
  auto sum = enum_synthesize(var, var.at(2), {}, small());
  REQUIRE(sum.expr);
  CHECK(sum.method == "enum");
  CHECK(check_equiv_detailed(var, *sum.expr, var.at(2), small(), 0xF4E5).equivalent);
  auto len = enum_synthesize(var, var.at(3), {}, small());
  REQUIRE(len.expr);
  CHECK(print(*len.expr) == "(+ y3 1)");
}

TEST_CASE("enumeration is deterministic") {
  Rfs phi = construct_rfs(parse_program("(program (xs) (foldl (lambda (acc x) (+ acc (* 2 x))) 1 xs))"));
  auto a = enum_synthesize(phi, phi.at(1), {}, small());
  auto b = enum_synthesize(phi, phi.at(1), {}, small());
  REQUIRE(a.expr);
  REQUIRE(b.expr);
  CHECK(*a.expr == *b.expr);
  CHECK(a.explored == b.explored);
}

TEST_CASE("a tiny budget fails with diagnostics") {
  Rfs var = construct_rfs(parse_program(test::kVariance));
  SearchConfig cfg = small();
  cfg.max_size = 3;
  auto r = enum_synthesize(var, var.at(4), {}, cfg);
  CHECK_FALSE(r.expr);
  CHECK(r.failure.find("exhausted") != std::string::npos);
  CHECK(r.best.size() == 3);
  CHECK(r.best[0].passed >= r.best[2].passed);
}

TEST_CASE("expression size ignores function nodes") {
  CHECK(expr_size(online("(+ y1 x)")) == 3);
  CHECK(expr_size(online("(pow x 2)")) == 3);
  CHECK(expr_size(online("(ite (< x 0) 1 y1)")) == 6);
}

TEST_CASE("configuration validation") {
  SearchConfig cfg;
  cfg.max_size = 0;
  CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
  cfg = SearchConfig{};
  cfg.min_length = 5;
  cfg.max_length = 2;
  CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
}
