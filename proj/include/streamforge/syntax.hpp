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

// Surface syntax: s-expression reader, parsers for programs, schemes and
// loose expressions, and the canonical printer.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "streamforge/ir.hpp"

namespace streamforge {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Parses `(program (xs args...) expr)`. `let` is inlined.
OfflineProgram parse_program(std::string_view text);

/// Parses an offline expression in which `free` names may occur unbound.
Expr parse_offline_expr(std::string_view text, const std::vector<std::string>& free = {});

/// Parses `(scheme [(args a...)] (init c...) (update (y1...yn) x (tuple e...)))`.
OnlineScheme parse_scheme(std::string_view text);

/// Parses an online expression over y1.., x and the given extra arguments.
OnlineExpr parse_online_expr(std::string_view text, const std::vector<std::string>& extra_args = {});

std::string print(const Expr& e);
std::string print(const OnlineExpr& e);
std::string print(const OfflineProgram& p);
std::string print(const OnlineScheme& s);

/// JSON mirror of a scheme; `init_approx` carries doubles and is approximate.
std::string to_json(const OnlineScheme& s);

}  // namespace streamforge
