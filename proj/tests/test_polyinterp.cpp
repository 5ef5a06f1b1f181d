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
#include "streamforge/polyinterp.hpp"
#include "streamforge/symeval.hpp"

using namespace streamforge;

namespace {

std::vector<Point2> points_of(const std::function<Rational(long)>& f, long from = 1, long to = 11) {
  std::vector<Point2> out;
  for (long l = from; l <= to; ++l) out.push_back({l, f(l)});
  return out;
}

SearchConfig small() {
  SearchConfig cfg;
  cfg.timeout_seconds = 60;
  return cfg;
}

}  // namespace

TEST_CASE("interpolation recovers exact coefficients") {
  CHECK(interpolate({{1, 2}, {2, 4}, {3, 6}}).coeffs == std::vector<Rational>{0, 2});
  CHECK(interpolate(points_of([](long) { return Rational(3); })).coeffs == std::vector<Rational>{3});
  CHECK(interpolate(points_of([](long n) { return Rational(n * (n + 1)); })).coeffs ==
        std::vector<Rational>{0, 1, 1});
  CHECK(interpolate(points_of([](long n) { return Rational(n * n * n - 2 * n); })).coeffs ==
        std::vector<Rational>{0, -2, 0, 1});
  CHECK(interpolate(points_of([](long n) { return test::ratio(n, 2); }, 3, 9)).to_string() == "1/2*n");
  CHECK(interpolate(points_of([](long) { return Rational(0); })).coeffs.empty());
  CHECK_THROWS_AS(interpolate({{1, 2}, {1, 3}}), std::invalid_argument);
}

TEST_CASE("exact linear solving") {
  auto x = solve_linear_system({{2, 1}, {1, 3}}, {3, 5});
  REQUIRE(x);
  CHECK(*x == std::vector<Rational>{Rational(4, 5), Rational(7, 5)});
  CHECK_FALSE(solve_linear_system({{1, 2}, {2, 4}}, {1, 2}));
  CHECK_FALSE(solve_linear_system({{1}, {1}}, {1, 2}));
  CHECK(solve_linear_system({{1}, {1}}, {2, 2}));
}

TEST_CASE("one unknown for the length spec") {
  Rfs phi = construct_rfs(parse_program(test::kMean));
  Template t = templatize(SymTerm::var(unknown_var_name(1)), {});
  REQUIRE(t.unknown_count == 1);
  auto s = sample_points(phi.at(3), phi, t, SamplePlan{}, 1);
  REQUIRE(s.points);
  for (const auto& [n, v] : s.points->points.at(1)) CHECK(v == n + 1);
  auto sol = solve_template(phi.at(3), phi, t, SamplePlan{}, small());
  REQUIRE(sol.expr);
  CHECK(sol.polys[0].coeffs == std::vector<Rational>{1, 1});
}

TEST_CASE("variance template solves to the closed form") {
  Rfs phi = construct_rfs(parse_program(test::kVariance));
  Template t = mine_expressions(phi, phi.at(4), 3).templates.at(0);
  auto sampled = sample_points(phi.at(4), phi, t, SamplePlan{}, 5);
  REQUIRE(sampled.points);
  // Lists of length 1 give a zero M2 column, so that length is skipped.
  CHECK(sampled.points->skipped == std::vector<int>{1});
  for (const auto& [n, v] : sampled.points->points.at(2)) CHECK(v == 2 * n);

  auto sol = solve_template(phi.at(4), phi, t, SamplePlan{}, small());
  REQUIRE(sol.expr);
  SymTerm s = SymTerm::var("y2"), n = SymTerm::var("y3"), sq = SymTerm::var("y4"), x = SymTerm::var("x");
  SymTerm expected = (s * s - SymTerm(2) * n * s * x + n * (n + SymTerm(1)) * sq + n * n * x * x) /
                     (n * (n + SymTerm(1)));
  CHECK(sol.symbolic == expected);
  CHECK(sol.level == VerificationLevel::BoundedVerified);
}

TEST_CASE("degenerate and non-polynomial templates fail") {
  Rfs phi = construct_rfs(parse_program(test::kMean));
  Template t;
  Monomial y1 = SymTerm::var("y1").num().terms()[0].mono;
  t.num = {{y1, 1, 1}, {y1, 1, 2}};
  t.unknown_count = 2;
  t.expr = parse_online_expr("(+ y1 y1)").expr();
  auto s = sample_points(phi.at(2), phi, t, SamplePlan{}, 1);
  CHECK_FALSE(s.points);
  CHECK_FALSE(s.failure.empty());

  // Sum of squares is not a function of the length alone.
  Rfs sums;
  sums.entries = {parse_offline_expr("(foldl + 0 xs)"), parse_offline_expr("(length xs)")};
  Expr spec = parse_offline_expr("(foldl + 0 (map (lambda (x) (* x x)) xs))");
  SymTerm x = SymTerm::var("x");
  Template u = templatize(SymTerm::var(unknown_var_name(1)) + x * x, {});
  auto sol = solve_template(spec, sums, u, SamplePlan{}, small());
  CHECK_FALSE(sol.expr);
  CHECK_FALSE(sol.failure.empty());

  Rfs no_len = construct_rfs(parse_program("(program (xs) (foldl + 0 xs))"));
  auto na = solve_template(no_len.at(1), no_len, u, SamplePlan{}, small());
  CHECK(na.not_applicable);
}
