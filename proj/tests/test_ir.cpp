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
#include "streamforge/ir.hpp"

using namespace streamforge;

namespace {

std::string parse_error(const std::string& text) {
  try {
    parse_program(text);
  } catch (const ParseError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("program round trip") {
  for (const char* text : {test::kMean, test::kCountAbove, "(program (xs) (foldl min 1000 xs))",
                           "(program (xs) (foldl + 0 (map (lambda (x) (* x x)) xs)))"}) {
    OfflineProgram p = parse_program(text);
    CHECK(parse_program(print(p)) == p);
  }
}

TEST_CASE("let is inlined") {
  OfflineProgram a = parse_program("(program (xs) (let (s (foldl + 0 xs)) (* s s)))");
  OfflineProgram b = parse_program("(program (xs) (* (foldl + 0 xs) (foldl + 0 xs)))");
  CHECK(a == b);
}

TEST_CASE("parse diagnostics carry positions") {
  CHECK(parse_error("(program (xs) (nth (sort xs) 2))") == "1:16: unknown builtin 'nth'");
  CHECK(parse_error("(program (xs) (map (lambda (x) x) xs))").find("must be scalar-typed") != std::string::npos);
  CHECK(parse_error("(program (xs) (+ 1 xs))").find("list variable 'xs'") != std::string::npos);
  CHECK(parse_error("(program (ys) 1)").find("xs") != std::string::npos);
  CHECK(parse_error("(program (xs) (pow 2 x))") != "");
}

TEST_CASE("list expressions are listed innermost first") {
  OfflineProgram v = parse_program(test::kVariance);
  auto les = list_expressions(v);
  REQUIRE(les.size() == 3);
  CHECK(les[0] == parse_offline_expr("(foldl + 0 xs)"));
  CHECK(les[1] == parse_offline_expr("(length xs)"));
  CHECK(les[2].kind() == NodeKind::Foldl);
  for (const auto& e : les) CHECK(is_list_expression(e));
  CHECK_FALSE(is_list_expression(v.body));
}

TEST_CASE("snoc substitution marks the extended list") {
  Expr e = parse_offline_expr("(foldl + 0 (filter (lambda (x) (> x 0)) xs))");
  Expr s = snoc_substitute(e);
  CHECK(is_snoc_list_expression(s));
  CHECK_FALSE(is_snoc_list_expression(e));
  CHECK(contains(s, [](const Expr& n) { return n.kind() == NodeKind::Snoc; }));
}

TEST_CASE("substitution and free variables") {
  Expr e = parse_offline_expr("(+ t (foldl (lambda (acc x) (+ acc t)) 0 xs))", {"t"});
  CHECK(free_vars(e) == std::set<std::string>{"t"});
  Expr r = substitute_var(e, "t", Expr::constant(2));
  CHECK(free_vars(r).empty());
  Expr len = Expr::length(Expr::list_var());
  CHECK(substitute(Expr::apply(Builtin::Add, {len, len}), len, Expr::accum(1)) ==
        Expr::apply(Builtin::Add, {Expr::accum(1), Expr::accum(1)}));
}

TEST_CASE("online expressions reject list constructs") {
  CHECK_THROWS_AS(OnlineExpr(parse_offline_expr("(length xs)")), std::invalid_argument);
  CHECK_NOTHROW(OnlineExpr(Expr::apply(Builtin::Add, {Expr::accum(1), Expr::new_elem()})));
}

TEST_CASE("scheme parse and print round trip") {
  const char* text = "(scheme (args t) (init 0 1/2) (update (y1 y2) x (tuple (+ y1 x t) (* y2 2))))";
  OnlineScheme s = parse_scheme(text);
  CHECK(s.arity() == 2);
  CHECK(s.init[1] == Rational(1, 2));
  CHECK(parse_scheme(print(s)) == s);
  CHECK(to_json(s).find("\"init\":[\"0\",\"1/2\"]") != std::string::npos);
}
