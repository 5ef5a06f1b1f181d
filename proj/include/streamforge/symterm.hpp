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


// Canonical multivariate rational functions over exact rationals.
//
// Indeterminates are atoms: named variables, or opaque applications (min,
// max, abs) and 0/1 indicators for comparisons. Booleans are represented
// by indicators, so `and` is a product, `not c` is 1 - c and `ite(c, a, b)`
// is c*a + (1-c)*b. Indicator exponents are capped at 1 after every
// product.

#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "streamforge/rational.hpp"

namespace streamforge {

class SymTerm;

enum class AtomKind { Var, Min, Max, Abs, Lt, Eq };

struct AtomData {
  AtomKind kind = AtomKind::Var;
  std::string name;              // Var only
  std::vector<SymTerm> args;     // Min/Max/Abs: operands; Lt/Eq: the single difference term
  std::string key;
  std::size_t hash = 0;
  std::set<std::string> vars;    // Var names occurring anywhere inside
  bool indicator = false;        // Lt/Eq
};

using Atom = std::shared_ptr<const AtomData>;

Atom make_var_atom(const std::string& name);

/// Total order on atoms by key. Smaller keys are more significant.
bool atom_less(const Atom& a, const Atom& b);
bool atom_equal(const Atom& a, const Atom& b);

/// Monomial: atoms with positive exponents, sorted by atom_less.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(const Atom& a, unsigned exponent = 1);

  const std::vector<std::pair<Atom, unsigned>>& factors() const { return factors_; }
  unsigned degree() const { return degree_; }
  bool is_one() const { return factors_.empty(); }
  unsigned exponent_of(const Atom& a) const;
  unsigned exponent_of(const std::string& var) const;

  /// Raw product; exponents add.
  Monomial operator*(const Monomial& o) const;
  /// Caps indicator exponents at 1.
  Monomial reduced() const;
  bool divides(const Monomial& o) const;
  /// o / *this; requires divides(o).
  Monomial quotient_of(const Monomial& o) const;
  Monomial without(const std::string& var) const;
  std::string key() const;

  /// Graded lexicographic comparison: negative, zero or positive.
  static int compare(const Monomial& a, const Monomial& b);
  bool operator==(const Monomial& o) const { return compare(*this, o) == 0; }
  bool operator<(const Monomial& o) const { return compare(*this, o) < 0; }

 private:
  std::vector<std::pair<Atom, unsigned>> factors_;
  unsigned degree_ = 0;
};

struct Term {
  Monomial mono;
  Rational coeff;
};

/// Sparse polynomial, terms sorted by decreasing monomial order.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(const Rational& c);
  explicit Polynomial(const Atom& a);
  static Polynomial from_terms(std::vector<Term> terms);

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
  Rational constant_value() const;
  const Term& leading() const { return terms_.front(); }
  std::size_t size() const { return terms_.size(); }

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator-() const;
  /// Raw product (no indicator reduction).
  Polynomial operator*(const Polynomial& o) const;
  Polynomial scaled(const Rational& c) const;
  Polynomial times(const Monomial& m, const Rational& c) const;
  Polynomial pow(unsigned e) const;
  /// Applies the indicator identity c^2 = c.
  Polynomial reduced() const;
  /// Divided by the leading coefficient; zero stays zero.
  Polynomial monic() const;

  bool operator==(const Polynomial& o) const;
  bool operator!=(const Polynomial& o) const { return !(*this == o); }

  /// Coefficients with respect to a variable atom: exponent -> polynomial.
  std::map<unsigned, Polynomial> coefficients_in(const Atom& v) const;
  unsigned degree_in(const Atom& v) const;
  std::set<std::string> vars() const;
  /// Atoms occurring at top level.
  std::vector<Atom> atoms() const;

  std::string key() const;
  std::size_t hash() const;

 private:
  void normalize();
  std::vector<Term> terms_;
};

/// Exact division; nullopt when `b` does not divide `a`.
std::optional<Polynomial> exact_divide(const Polynomial& a, const Polynomial& b);
/// Monic greatest common divisor (1 when coprime, 0 when both are zero).
Polynomial gcd(const Polynomial& a, const Polynomial& b);
/// Pseudo-remainder with respect to `v`.
Polynomial prem(const Polynomial& a, const Polynomial& b, const Atom& v);
/// Monic gcd of the coefficients with respect to `v`.
Polynomial content_in(const Polynomial& a, const Atom& v);

using Point = std::function<std::optional<Rational>(const std::string&)>;

/// Canonical rational function num/den: gcd(num, den) = 1, den monic,
/// zero is 0/1.
class SymTerm {
 public:
  SymTerm() : den_(Rational(1)) {}
  SymTerm(const Rational& c);  // NOLINT(google-explicit-constructor)
  explicit SymTerm(const Polynomial& p);
  static SymTerm var(const std::string& name);
  static SymTerm atom(const Atom& a);
  /// Builds num/den and normalizes. A zero denominator gives 0.
  static SymTerm fraction(const Polynomial& num, const Polynomial& den);

  const Polynomial& num() const { return num_; }
  const Polynomial& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  Rational constant_value() const { return num_.constant_value(); }
  bool is_polynomial() const { return den_.is_constant(); }

  SymTerm operator+(const SymTerm& o) const;
  SymTerm operator-(const SymTerm& o) const;
  SymTerm operator-() const;
  SymTerm operator*(const SymTerm& o) const;
  /// Safe division: dividing by the zero term gives zero.
  SymTerm operator/(const SymTerm& o) const;
  SymTerm pow(unsigned e) const;

  bool operator==(const SymTerm& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const SymTerm& o) const { return !(*this == o); }

  std::set<std::string> vars() const;
  bool mentions(const std::string& var) const;
  /// True if `var` occurs only as a bare top-level atom (never inside a
  /// min/max/abs/indicator argument).
  bool mentions_only_at_top(const std::string& var) const;
  bool has_foreign_atoms() const;

  /// Evaluates at a point; nullopt when some variable is unbound or a
  /// denominator vanishes.
  std::optional<Rational> evaluate(const Point& point) const;

  SymTerm substitute(const std::map<std::string, SymTerm>& values) const;
  SymTerm substitute(const std::string& var, const SymTerm& value) const;

  std::string key() const;
  std::string to_string() const;
  std::size_t hash() const;

 private:
  Polynomial num_;
  Polynomial den_;
};

// Smart constructors for the non-field operations.
SymTerm sym_min(const SymTerm& a, const SymTerm& b);
SymTerm sym_max(const SymTerm& a, const SymTerm& b);
SymTerm sym_abs(const SymTerm& a);
/// Indicators (0 or 1).
SymTerm sym_lt(const SymTerm& a, const SymTerm& b);
SymTerm sym_le(const SymTerm& a, const SymTerm& b);
SymTerm sym_eq(const SymTerm& a, const SymTerm& b);
SymTerm sym_and(const SymTerm& a, const SymTerm& b);
SymTerm sym_or(const SymTerm& a, const SymTerm& b);
SymTerm sym_not(const SymTerm& a);
SymTerm sym_ite(const SymTerm& cond, const SymTerm& then_branch, const SymTerm& else_branch);

/// Number of terms in the numerator and denominator, recursively through
/// atom arguments.
std::size_t node_count(const SymTerm& t);

}  // namespace streamforge
