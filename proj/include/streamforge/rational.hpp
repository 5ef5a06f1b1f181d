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

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace streamforge {

/// Arbitrary-precision rational, always kept in lowest terms.
using Rational = mpq_class;

/// Parses `[sign]digits[/digits]`. Returns nullopt on malformed text or a
/// zero denominator.
std::optional<Rational> parse_rational(std::string_view text);

std::string to_string(const Rational& q);

/// Division with the convention q / 0 = 0.
Rational safe_div(const Rational& a, const Rational& b);

Rational pow(const Rational& base, unsigned long exponent);

std::size_t hash_value(const Rational& q);

bool is_integer(const Rational& q);

/// Approximate double, used only in JSON output.
double to_double(const Rational& q);

using List = std::vector<Rational>;

}  // namespace streamforge
