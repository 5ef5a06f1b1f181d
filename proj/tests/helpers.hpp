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

#pragma once

#include <string>

#include "streamforge/rational.hpp"
#include "streamforge/syntax.hpp"

namespace streamforge::test {

inline Rational q(const std::string& text) { return *parse_rational(text); }

/// mpq_class(n, d) is not reduced on construction.
inline Rational ratio(long n, long d) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

inline List list(std::initializer_list<const char*> items) {
  List out;
  for (const char* s : items) out.push_back(q(s));
  return out;
}

inline const char* kMean = "(program (xs) (/ (foldl + 0 xs) (length xs)))";
inline const char* kVariance =
    "(program (xs) (let (s (foldl + 0 xs)) (let (avg (/ s (length xs)))"
    " (/ (foldl (lambda (acc x) (+ acc (pow (- x avg) 2))) 0 xs) (length xs)))))";
inline const char* kCountAbove = "(program (xs t) (length (filter (lambda (x) (> x t)) xs)))";

}  // namespace streamforge::test
