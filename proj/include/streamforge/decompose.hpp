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


// Sketch generation: every list expression of an RFS entry becomes a hole
// whose target is that list expression.

#pragma once

#include <map>
#include <string>
#include <vector>

#include "streamforge/ir.hpp"
#include "streamforge/rfs.hpp"

namespace streamforge {

/// Online program with Hole nodes; component 1 is the output.
struct Sketch {
  std::vector<Expr> body;
  std::size_t arity() const { return body.size(); }
};

/// Hole id (1-based) to its offline target expression.
using HoleSpecs = std::map<int, Expr>;

struct Decomposition {
  Sketch sketch;
  HoleSpecs holes;
};

Decomposition decompose(const Rfs& phi, const OfflineProgram& p);

/// Replaces each Hole node by its fill.
Expr fill_holes(const Expr& e, const std::map<int, Expr>& fills);

/// Sketch and specs as s-expressions, holes printed as (hole k).
std::string debug_dump(const Decomposition& d);

}  // namespace streamforge
