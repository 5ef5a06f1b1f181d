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


#include "streamforge/decompose.hpp"

#include "streamforge/syntax.hpp"

namespace streamforge {

namespace {

class Decomposer {
 public:
  explicit Decomposer(HoleSpecs& holes) : holes_(holes) {}

  Expr translate(const Expr& e) {
    if (is_list_expression(e)) return Expr::hole(hole_for(e));
    switch (e.kind()) {
      case NodeKind::Apply: {
        std::vector<Expr> args;
        for (const auto& a : e.args()) args.push_back(translate(a));
        return Expr::apply(e.fn(), std::move(args));
      }
      case NodeKind::Ite:
        return Expr::ite(translate(e.child(0)), translate(e.child(1)), translate(e.child(2)));
      default:
        return e;
    }
  }

 private:
  int hole_for(const Expr& spec) {
    for (const auto& [id, s] : holes_) {
      if (s == spec) return id;
    }
    int id = static_cast<int>(holes_.size()) + 1;
    holes_.emplace(id, spec);
    return id;
  }

  HoleSpecs& holes_;
};

}  // namespace

Decomposition decompose(const Rfs& phi, const OfflineProgram& p) {
  (void)p;
  Decomposition d;
  Decomposer dec(d.holes);
  for (const auto& entry : phi.entries) d.sketch.body.push_back(dec.translate(entry));
  return d;
}

Expr fill_holes(const Expr& e, const std::map<int, Expr>& fills) {
  return rewrite(e, [&](const Expr& n) -> std::optional<Expr> {
    if (n.kind() != NodeKind::Hole) return std::nullopt;
    auto it = fills.find(n.index());
    if (it == fills.end()) return std::nullopt;
    return it->second;
  });
}

std::string debug_dump(const Decomposition& d) {
  std::string out = "(sketch (update (";
  for (std::size_t i = 0; i < d.sketch.arity(); ++i) {
    if (i) out += ' ';
    out += "y" + std::to_string(i + 1);
  }
  out += ") x (tuple";
  for (const auto& c : d.sketch.body) out += " " + print(c);
  out += ")))";
  for (const auto& [id, spec] : d.holes) out += "\n(hole " + std::to_string(id) + " " + print(spec) + ")";
  return out;
}

}  // namespace streamforge
