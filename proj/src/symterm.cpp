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


#include "streamforge/symterm.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace streamforge {

namespace {

const char* kind_prefix(AtomKind k) {
  switch (k) {
    case AtomKind::Min: return "min";
    case AtomKind::Max: return "max";
    case AtomKind::Abs: return "abs";
    case AtomKind::Lt: return "lt";
    case AtomKind::Eq: return "eq";
    case AtomKind::Var: break;
  }
  return "";
}

Atom make_app_atom(AtomKind kind, std::vector<SymTerm> args) {
  auto d = std::make_shared<AtomData>();
  d->kind = kind;
  d->indicator = kind == AtomKind::Lt || kind == AtomKind::Eq;
  d->key = std::string(kind_prefix(kind)) + "(";
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i) d->key += ", ";
    d->key += args[i].to_string();
    auto v = args[i].vars();
    d->vars.insert(v.begin(), v.end());
  }
  d->key += ")";
  d->hash = std::hash<std::string>{}(d->key);
  d->args = std::move(args);
  return d;
}

std::string coeff_prefix(const Rational& c, bool has_mono) {
  if (!has_mono) return to_string(c);
  if (c == 1) return "";
  if (c == -1) return "-";
  return to_string(c) + "*";
}

}  // namespace

Atom make_var_atom(const std::string& name) {
  auto d = std::make_shared<AtomData>();
  d->kind = AtomKind::Var;
  d->name = name;
  d->key = name;
  d->hash = std::hash<std::string>{}(name);
  d->vars = {name};
  return d;
}

bool atom_less(const Atom& a, const Atom& b) {
  if (a.get() == b.get()) return false;
  return a->key < b->key;
}

bool atom_equal(const Atom& a, const Atom& b) { return a.get() == b.get() || a->key == b->key; }

// ---- Monomial ----------------------------------------------------------------

Monomial::Monomial(const Atom& a, unsigned exponent) {
  if (exponent > 0) {
    factors_.emplace_back(a, exponent);
    degree_ = exponent;
  }
}

unsigned Monomial::exponent_of(const Atom& a) const {
  for (const auto& [f, e] : factors_) {
    if (atom_equal(f, a)) return e;
  }
  return 0;
}

unsigned Monomial::exponent_of(const std::string& var) const {
  for (const auto& [f, e] : factors_) {
    if (f->kind == AtomKind::Var && f->name == var) return e;
  }
  return 0;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r;
  r.factors_.reserve(factors_.size() + o.factors_.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < factors_.size() || j < o.factors_.size()) {
    if (j == o.factors_.size() || (i < factors_.size() && atom_less(factors_[i].first, o.factors_[j].first))) {
      r.factors_.push_back(factors_[i++]);
    } else if (i == factors_.size() || atom_less(o.factors_[j].first, factors_[i].first)) {
      r.factors_.push_back(o.factors_[j++]);
    } else {
      r.factors_.emplace_back(factors_[i].first, factors_[i].second + o.factors_[j].second);
      ++i;
      ++j;
    }
  }
  r.degree_ = degree_ + o.degree_;
  return r;
}

Monomial Monomial::reduced() const {
  Monomial r = *this;
  r.degree_ = 0;
  for (auto& [a, e] : r.factors_) {
    if (a->indicator) e = 1;
    r.degree_ += e;
  }
  return r;
}

bool Monomial::divides(const Monomial& o) const {
  std::size_t j = 0;
  for (const auto& [a, e] : factors_) {
    while (j < o.factors_.size() && atom_less(o.factors_[j].first, a)) ++j;
    if (j == o.factors_.size() || !atom_equal(o.factors_[j].first, a) || o.factors_[j].second < e) return false;
  }
  return true;
}

Monomial Monomial::quotient_of(const Monomial& o) const {
  Monomial r;
  std::size_t i = 0;
  for (const auto& [a, e] : o.factors_) {
    unsigned sub = 0;
    if (i < factors_.size() && atom_equal(factors_[i].first, a)) sub = factors_[i++].second;
    if (e > sub) r.factors_.emplace_back(a, e - sub);
  }
  r.degree_ = o.degree_ - degree_;
  return r;
}

Monomial Monomial::without(const std::string& var) const {
  Monomial r;
  for (const auto& f : factors_) {
    if (f.first->kind == AtomKind::Var && f.first->name == var) continue;
    r.factors_.push_back(f);
    r.degree_ += f.second;
  }
  return r;
}

std::string Monomial::key() const {
  std::string out;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (i) out += '*';
    out += factors_[i].first->key;
    if (factors_[i].second != 1) out += "^" + std::to_string(factors_[i].second);
  }
  return out;
}

int Monomial::compare(const Monomial& a, const Monomial& b) {
  if (a.degree_ != b.degree_) return a.degree_ < b.degree_ ? -1 : 1;
  std::size_t n = std::min(a.factors_.size(), b.factors_.size());
  for (std::size_t i = 0; i < n; ++i) {
    const auto& [fa, ea] = a.factors_[i];
    const auto& [fb, eb] = b.factors_[i];
    if (!atom_equal(fa, fb)) return atom_less(fa, fb) ? 1 : -1;
    if (ea != eb) return ea < eb ? -1 : 1;
  }
  if (a.factors_.size() != b.factors_.size()) return a.factors_.size() > b.factors_.size() ? 1 : -1;
  return 0;
}

// ---- Polynomial ----------------------------------------------------------------

Polynomial::Polynomial(const Rational& c) {
  if (sgn(c) != 0) terms_.push_back({Monomial(), c});
}

Polynomial::Polynomial(const Atom& a) { terms_.push_back({Monomial(a), Rational(1)}); }

Polynomial Polynomial::from_terms(std::vector<Term> terms) {
  Polynomial p;
  p.terms_ = std::move(terms);
  p.normalize();
  return p;
}

void Polynomial::normalize() {
  std::sort(terms_.begin(), terms_.end(),
            [](const Term& a, const Term& b) { return Monomial::compare(a.mono, b.mono) > 0; });
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (auto& t : terms_) {
    if (!out.empty() && out.back().mono == t.mono) {
      out.back().coeff += t.coeff;
    } else {
      if (!out.empty() && sgn(out.back().coeff) == 0) out.pop_back();
      out.push_back(std::move(t));
    }
  }
  if (!out.empty() && sgn(out.back().coeff) == 0) out.pop_back();
  terms_ = std::move(out);
}

Rational Polynomial::constant_value() const {
  if (terms_.empty()) return Rational(0);
  if (!terms_.back().mono.is_one()) return Rational(0);
  return terms_.back().coeff;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  Polynomial r;
  r.terms_.reserve(terms_.size() + o.terms_.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < terms_.size() || j < o.terms_.size()) {
    int c;
    if (i == terms_.size()) c = -1;
    else if (j == o.terms_.size()) c = 1;
    else c = Monomial::compare(terms_[i].mono, o.terms_[j].mono);
    if (c > 0) {
      r.terms_.push_back(terms_[i++]);
    } else if (c < 0) {
      r.terms_.push_back(o.terms_[j++]);
    } else {
      Rational s = terms_[i].coeff + o.terms_[j].coeff;
      if (sgn(s) != 0) r.terms_.push_back({terms_[i].mono, s});
      ++i;
      ++j;
    }
  }
  return r;
}

Polynomial Polynomial::operator-() const { return scaled(Rational(-1)); }

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (-o); }

Polynomial Polynomial::operator*(const Polynomial& o) const {
  if (is_zero() || o.is_zero()) return {};
  if (o.is_constant()) return scaled(o.constant_value());
  if (is_constant()) return o.scaled(constant_value());
  std::vector<Term> out;
  out.reserve(terms_.size() * o.terms_.size());
  for (const auto& a : terms_) {
    for (const auto& b : o.terms_) out.push_back({a.mono * b.mono, a.coeff * b.coeff});
  }
  return from_terms(std::move(out));
}

Polynomial Polynomial::scaled(const Rational& c) const {
  if (sgn(c) == 0) return {};
  Polynomial r = *this;
  for (auto& t : r.terms_) t.coeff *= c;
  return r;
}

Polynomial Polynomial::times(const Monomial& m, const Rational& c) const {
  if (sgn(c) == 0) return {};
  Polynomial r;
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) r.terms_.push_back({t.mono * m, t.coeff * c});
  return r;  // multiplying by a monomial preserves the order
}

Polynomial Polynomial::pow(unsigned e) const {
  Polynomial result(Rational(1));
  Polynomial base = *this;
  while (e) {
    if (e & 1U) result = result * base;
    e >>= 1U;
    if (e) base = base * base;
  }
  return result;
}

Polynomial Polynomial::reduced() const {
  bool any = false;
  for (const auto& t : terms_) {
    for (const auto& [a, e] : t.mono.factors()) {
      if (a->indicator && e > 1) any = true;
    }
  }
  if (!any) return *this;
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) out.push_back({t.mono.reduced(), t.coeff});
  return from_terms(std::move(out));
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return {};
  return scaled(Rational(1) / leading().coeff);
}

bool Polynomial::operator==(const Polynomial& o) const {
  if (terms_.size() != o.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (terms_[i].coeff != o.terms_[i].coeff || !(terms_[i].mono == o.terms_[i].mono)) return false;
  }
  return true;
}

std::map<unsigned, Polynomial> Polynomial::coefficients_in(const Atom& v) const {
  std::map<unsigned, std::vector<Term>> parts;
  for (const auto& t : terms_) {
    unsigned e = t.mono.exponent_of(v);
    if (e == 0) {
      parts[0].push_back(t);
    } else {
      parts[e].push_back({Monomial(v, e).quotient_of(t.mono), t.coeff});
    }
  }
  std::map<unsigned, Polynomial> out;
  for (auto& [e, ts] : parts) out.emplace(e, from_terms(std::move(ts)));
  return out;
}

unsigned Polynomial::degree_in(const Atom& v) const {
  unsigned d = 0;
  for (const auto& t : terms_) d = std::max(d, t.mono.exponent_of(v));
  return d;
}

std::set<std::string> Polynomial::vars() const {
  std::set<std::string> out;
  for (const auto& t : terms_) {
    for (const auto& [a, e] : t.mono.factors()) out.insert(a->vars.begin(), a->vars.end());
  }
  return out;
}

std::vector<Atom> Polynomial::atoms() const {
  std::vector<Atom> out;
  for (const auto& t : terms_) {
    for (const auto& [a, e] : t.mono.factors()) {
      if (std::none_of(out.begin(), out.end(), [&](const Atom& b) { return atom_equal(a, b); })) out.push_back(a);
    }
  }
  std::sort(out.begin(), out.end(), atom_less);
  return out;
}

std::string Polynomial::key() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    const auto& t = terms_[i];
    Rational c = t.coeff;
    if (i) {
      out += sgn(c) < 0 ? " - " : " + ";
      c = abs(c);
    }
    out += coeff_prefix(c, !t.mono.is_one());
    out += t.mono.key();
  }
  return out;
}

std::size_t Polynomial::hash() const { return std::hash<std::string>{}(key()); }

// ---- division and gcd -------------------------------------------------------

std::optional<Polynomial> exact_divide(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) return std::nullopt;
  if (b.is_constant()) return a.scaled(Rational(1) / b.constant_value());
  Polynomial r = a;
  std::vector<Term> q;
  const Term& lb = b.leading();
  while (!r.is_zero()) {
    const Term& lr = r.leading();
    if (!lb.mono.divides(lr.mono)) return std::nullopt;
    Monomial m = lb.mono.quotient_of(lr.mono);
    Rational c = lr.coeff / lb.coeff;
    q.push_back({m, c});
    r = r - b.times(m, c);
  }
  return Polynomial::from_terms(std::move(q));
}

Polynomial prem(const Polynomial& a, const Polynomial& b, const Atom& v) {
  unsigned n = b.degree_in(v);
  Polynomial lb = b.coefficients_in(v).rbegin()->second;
  Polynomial r = a;
  while (!r.is_zero()) {
    unsigned dr = r.degree_in(v);
    if (dr < n) break;
    Polynomial lr = r.coefficients_in(v).rbegin()->second;
    r = lb * r - (lr * b).times(Monomial(v, dr - n), Rational(1));
  }
  return r;
}

namespace {

Polynomial monomial_gcd(const Monomial& m, const Polynomial& p) {
  std::vector<std::pair<Atom, unsigned>> g(m.factors().begin(), m.factors().end());
  for (const auto& t : p.terms()) {
    for (auto& [a, e] : g) e = std::min(e, t.mono.exponent_of(a));
  }
  Monomial out;
  for (const auto& [a, e] : g) {
    if (e) out = out * Monomial(a, e);
  }
  return Polynomial::from_terms({{out, Rational(1)}});
}

Polynomial divide_or_throw(const Polynomial& a, const Polynomial& b) {
  auto q = exact_divide(a, b);
  if (!q) throw std::logic_error("inexact polynomial division in gcd");
  return *q;
}

}  // namespace

Polynomial content_in(const Polynomial& a, const Atom& v) {
  Polynomial g;
  for (const auto& [e, c] : a.coefficients_in(v)) {
    g = gcd(g, c);
    if (g.is_constant() && !g.is_zero()) return Polynomial(Rational(1));
  }
  return g.monic();
}

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.is_constant() || b.is_constant()) return Polynomial(Rational(1));
  if (a.size() == 1) return monomial_gcd(a.leading().mono, b);
  if (b.size() == 1) return monomial_gcd(b.leading().mono, a);
  if (a == b) return a.monic();

  std::vector<Atom> va = a.atoms();
  std::vector<Atom> vb = b.atoms();
  auto in = [](const std::vector<Atom>& vs, const Atom& x) {
    return std::any_of(vs.begin(), vs.end(), [&](const Atom& y) { return atom_equal(x, y); });
  };
  for (const auto& x : va) {
    if (!in(vb, x)) return gcd(content_in(a, x), b);
  }
  for (const auto& x : vb) {
    if (!in(va, x)) return gcd(a, content_in(b, x));
  }
  Atom v = va.front();
  unsigned best = a.degree_in(v) + b.degree_in(v);
  for (const auto& x : va) {
    unsigned d = a.degree_in(x) + b.degree_in(x);
    if (d < best) {
      best = d;
      v = x;
    }
  }
  Polynomial ca = content_in(a, v);
  Polynomial cb = content_in(b, v);
  Polynomial pa = divide_or_throw(a, ca);
  Polynomial pb = divide_or_throw(b, cb);
  Polynomial gc = gcd(ca, cb);
  if (pa.degree_in(v) < pb.degree_in(v)) std::swap(pa, pb);
  Polynomial g;
  for (;;) {
    Polynomial r = prem(pa, pb, v);
    if (r.is_zero()) {
      g = pb;
      break;
    }
    if (r.degree_in(v) == 0) {
      g = Polynomial(Rational(1));
      break;
    }
    pa = pb;
    pb = divide_or_throw(r, content_in(r, v));
  }
  return (gc * g).monic();
}

// ---- SymTerm --------------------------------------------------------------------

SymTerm::SymTerm(const Rational& c) : num_(c), den_(Rational(1)) {}

SymTerm::SymTerm(const Polynomial& p) : num_(p.reduced()), den_(Rational(1)) {}

SymTerm SymTerm::var(const std::string& name) { return SymTerm(Polynomial(make_var_atom(name))); }

SymTerm SymTerm::atom(const Atom& a) { return SymTerm(Polynomial(a)); }

SymTerm SymTerm::fraction(const Polynomial& num_in, const Polynomial& den_in) {
  Polynomial num = num_in.reduced();
  Polynomial den = den_in.reduced();
  SymTerm r;
  if (den.is_zero() || num.is_zero()) return r;
  if (den.is_constant()) {
    r.num_ = num.scaled(Rational(1) / den.constant_value());
    return r;
  }
  Polynomial g = gcd(num, den);
  if (!g.is_constant()) {
    num = divide_or_throw(num, g);
    den = divide_or_throw(den, g);
  }
  Rational lc = den.leading().coeff;
  if (den.is_constant()) {
    r.num_ = num.scaled(Rational(1) / den.constant_value());
    return r;
  }
  r.num_ = num.scaled(Rational(1) / lc);
  r.den_ = den.scaled(Rational(1) / lc);
  return r;
}

SymTerm SymTerm::operator+(const SymTerm& o) const {
  if (is_polynomial() && o.is_polynomial()) return SymTerm(num_ + o.num_);
  if (den_ == o.den_) return fraction(num_ + o.num_, den_);
  if (o.is_polynomial()) return fraction(num_ + o.num_ * den_, den_);
  if (is_polynomial()) return fraction(num_ * o.den_ + o.num_, o.den_);
  return fraction(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

SymTerm SymTerm::operator-() const {
  SymTerm r = *this;
  r.num_ = -num_;
  return r;
}

SymTerm SymTerm::operator-(const SymTerm& o) const { return *this + (-o); }

SymTerm SymTerm::operator*(const SymTerm& o) const {
  if (is_zero() || o.is_zero()) return {};
  if (is_polynomial() && o.is_polynomial()) return SymTerm(num_ * o.num_);
  return fraction(num_ * o.num_, den_ * o.den_);
}

SymTerm SymTerm::operator/(const SymTerm& o) const {
  if (o.is_zero() || is_zero()) return {};
  return fraction(num_ * o.den_, den_ * o.num_);
}

SymTerm SymTerm::pow(unsigned e) const {
  if (is_polynomial()) return SymTerm(num_.pow(e));
  return fraction(num_.pow(e), den_.pow(e));
}

std::set<std::string> SymTerm::vars() const {
  auto a = num_.vars();
  auto b = den_.vars();
  a.insert(b.begin(), b.end());
  return a;
}

bool SymTerm::mentions(const std::string& var) const { return vars().count(var) > 0; }

bool SymTerm::mentions_only_at_top(const std::string& var) const {
  for (const auto* p : {&num_, &den_}) {
    for (const auto& a : p->atoms()) {
      if (a->kind != AtomKind::Var && a->vars.count(var)) return false;
    }
  }
  return true;
}

bool SymTerm::has_foreign_atoms() const {
  for (const auto* p : {&num_, &den_}) {
    for (const auto& a : p->atoms()) {
      if (a->kind != AtomKind::Var) return true;
    }
  }
  return false;
}

namespace {

using AtomCache = std::unordered_map<const AtomData*, std::optional<Rational>>;

std::optional<Rational> eval_poly(const Polynomial& p, const Point& point, AtomCache& cache);

std::optional<Rational> eval_term(const SymTerm& t, const Point& point, AtomCache& cache) {
  auto n = eval_poly(t.num(), point, cache);
  if (!n) return std::nullopt;
  auto d = eval_poly(t.den(), point, cache);
  if (!d || sgn(*d) == 0) return std::nullopt;
  return Rational(*n / *d);
}

std::optional<Rational> eval_atom(const Atom& a, const Point& point, AtomCache& cache) {
  if (auto it = cache.find(a.get()); it != cache.end()) return it->second;
  std::optional<Rational> r;
  if (a->kind == AtomKind::Var) {
    r = point(a->name);
  } else {
    std::vector<Rational> vals;
    bool ok = true;
    for (const auto& arg : a->args) {
      auto v = eval_term(arg, point, cache);
      if (!v) {
        ok = false;
        break;
      }
      vals.push_back(*v);
    }
    if (ok) {
      switch (a->kind) {
        case AtomKind::Min: r = std::min(vals[0], vals[1]); break;
        case AtomKind::Max: r = std::max(vals[0], vals[1]); break;
        case AtomKind::Abs: r = Rational(abs(vals[0])); break;
        case AtomKind::Lt: r = Rational(sgn(vals[0]) < 0 ? 1 : 0); break;
        case AtomKind::Eq: r = Rational(sgn(vals[0]) == 0 ? 1 : 0); break;
        case AtomKind::Var: break;
      }
    }
  }
  cache.emplace(a.get(), r);
  return r;
}

std::optional<Rational> eval_poly(const Polynomial& p, const Point& point, AtomCache& cache) {
  Rational sum = 0;
  for (const auto& t : p.terms()) {
    Rational prod = t.coeff;
    for (const auto& [a, e] : t.mono.factors()) {
      auto v = eval_atom(a, point, cache);
      if (!v) return std::nullopt;
      prod *= e == 1 ? *v : streamforge::pow(*v, e);
    }
    sum += prod;
  }
  return sum;
}

}  // namespace

std::optional<Rational> SymTerm::evaluate(const Point& point) const {
  AtomCache cache;
  return eval_term(*this, point, cache);
}

namespace {

bool touches(const Atom& a, const std::map<std::string, SymTerm>& values) {
  for (const auto& v : a->vars) {
    if (values.count(v)) return true;
  }
  return false;
}

SymTerm rebuild_atom(const Atom& a, const std::map<std::string, SymTerm>& values) {
  if (a->kind == AtomKind::Var) return values.at(a->name);
  std::vector<SymTerm> args;
  for (const auto& arg : a->args) args.push_back(arg.substitute(values));
  switch (a->kind) {
    case AtomKind::Min: return sym_min(args[0], args[1]);
    case AtomKind::Max: return sym_max(args[0], args[1]);
    case AtomKind::Abs: return sym_abs(args[0]);
    case AtomKind::Lt: return sym_lt(args[0], SymTerm(Rational(0)));
    case AtomKind::Eq: return sym_eq(args[0], SymTerm(Rational(0)));
    case AtomKind::Var: break;
  }
  return {};
}

SymTerm substitute_poly(const Polynomial& p, const std::map<std::string, SymTerm>& values) {
  std::vector<std::pair<Atom, SymTerm>> table;
  auto value_of = [&](const Atom& a) -> const SymTerm& {
    for (const auto& [b, v] : table) {
      if (atom_equal(a, b)) return v;
    }
    table.emplace_back(a, rebuild_atom(a, values));
    return table.back().second;
  };
  bool affected = false;
  for (const auto& t : p.terms()) {
    for (const auto& [a, e] : t.mono.factors()) {
      if (touches(a, values)) {
        affected = true;
        value_of(a);
      }
    }
  }
  if (!affected) return SymTerm(p);

  // Common denominator: each affected atom a with value n_a/d_a and maximum
  // exponent D_a contributes d_a^D_a to the denominator.
  std::vector<std::pair<Atom, unsigned>> max_exp;
  for (const auto& t : p.terms()) {
    for (const auto& [a, e] : t.mono.factors()) {
      if (!touches(a, values)) continue;
      auto it = std::find_if(max_exp.begin(), max_exp.end(), [&](const auto& q) { return atom_equal(q.first, a); });
      if (it == max_exp.end()) max_exp.emplace_back(a, e);
      else it->second = std::max(it->second, e);
    }
  }
  std::map<std::pair<const AtomData*, unsigned>, Polynomial> npow;
  std::map<std::pair<const AtomData*, unsigned>, Polynomial> dpow;
  auto cached_pow = [](auto& cache, const AtomData* key, const Polynomial& base, unsigned e) -> const Polynomial& {
    auto it = cache.find({key, e});
    if (it != cache.end()) return it->second;
    return cache.emplace(std::make_pair(key, e), base.pow(e)).first->second;
  };
  Polynomial num;
  for (const auto& t : p.terms()) {
    Monomial keep;
    Polynomial prod(t.coeff);
    for (const auto& [a, e] : t.mono.factors()) {
      if (!touches(a, values)) {
        keep = keep * Monomial(a, e);
        continue;
      }
      const SymTerm& v = value_of(a);
      unsigned dmax = std::find_if(max_exp.begin(), max_exp.end(),
                                   [&](const auto& q) { return atom_equal(q.first, a); })->second;
      prod = prod * cached_pow(npow, a.get(), v.num(), e);
      if (dmax > e) prod = prod * cached_pow(dpow, a.get(), v.den(), dmax - e);
    }
    num = num + prod.times(keep, Rational(1));
  }
  Polynomial den(Rational(1));
  for (const auto& [a, d] : max_exp) den = den * cached_pow(dpow, a.get(), value_of(a).den(), d);
  return SymTerm::fraction(num, den);
}

}  // namespace

SymTerm SymTerm::substitute(const std::map<std::string, SymTerm>& values) const {
  if (values.empty()) return *this;
  SymTerm n = substitute_poly(num_, values);
  if (den_.is_constant()) return n;
  SymTerm d = substitute_poly(den_, values);
  return n / d;
}

SymTerm SymTerm::substitute(const std::string& var, const SymTerm& value) const {
  return substitute(std::map<std::string, SymTerm>{{var, value}});
}

std::string SymTerm::to_string() const {
  if (den_.is_constant()) return num_.key();
  auto wrap = [](const Polynomial& p) { return p.size() == 1 ? p.key() : "(" + p.key() + ")"; };
  return wrap(num_) + "/" + wrap(den_);
}

std::string SymTerm::key() const { return to_string(); }

std::size_t SymTerm::hash() const { return std::hash<std::string>{}(key()); }

// ---- smart constructors -----------------------------------------------------------

SymTerm sym_min(const SymTerm& a, const SymTerm& b) {
  if (a.is_constant() && b.is_constant()) return std::min(a.constant_value(), b.constant_value());
  if (a == b) return a;
  if (b.key() < a.key()) return SymTerm::atom(make_app_atom(AtomKind::Min, {b, a}));
  return SymTerm::atom(make_app_atom(AtomKind::Min, {a, b}));
}

SymTerm sym_max(const SymTerm& a, const SymTerm& b) {
  if (a.is_constant() && b.is_constant()) return std::max(a.constant_value(), b.constant_value());
  if (a == b) return a;
  if (b.key() < a.key()) return SymTerm::atom(make_app_atom(AtomKind::Max, {b, a}));
  return SymTerm::atom(make_app_atom(AtomKind::Max, {a, b}));
}

SymTerm sym_abs(const SymTerm& a) {
  if (a.is_constant()) return Rational(abs(a.constant_value()));
  SymTerm v = sgn(a.num().leading().coeff) < 0 ? -a : a;
  return SymTerm::atom(make_app_atom(AtomKind::Abs, {v}));
}

SymTerm sym_lt(const SymTerm& a, const SymTerm& b) {
  SymTerm d = a - b;
  if (d.is_constant()) return Rational(sgn(d.constant_value()) < 0 ? 1 : 0);
  // sign(n/d) = sign(n*d) wherever d does not vanish.
  Polynomial p = (d.num() * d.den()).reduced();
  p = p.scaled(Rational(1) / abs(p.leading().coeff));
  return SymTerm::atom(make_app_atom(AtomKind::Lt, {SymTerm(p)}));
}

SymTerm sym_le(const SymTerm& a, const SymTerm& b) { return sym_not(sym_lt(b, a)); }

SymTerm sym_eq(const SymTerm& a, const SymTerm& b) {
  SymTerm d = a - b;
  if (d.is_constant()) return Rational(sgn(d.constant_value()) == 0 ? 1 : 0);
  return SymTerm::atom(make_app_atom(AtomKind::Eq, {SymTerm(d.num().monic())}));
}

SymTerm sym_and(const SymTerm& a, const SymTerm& b) { return a * b; }

SymTerm sym_or(const SymTerm& a, const SymTerm& b) { return a + b - a * b; }

SymTerm sym_not(const SymTerm& a) { return SymTerm(Rational(1)) - a; }

SymTerm sym_ite(const SymTerm& cond, const SymTerm& then_branch, const SymTerm& else_branch) {
  if (cond.is_constant()) return sgn(cond.constant_value()) != 0 ? then_branch : else_branch;
  if (then_branch == else_branch) return then_branch;
  return else_branch + cond * (then_branch - else_branch);
}

std::size_t node_count(const SymTerm& t) {
  std::size_t n = t.num().size() + t.den().size();
  for (const auto* p : {&t.num(), &t.den()}) {
    for (const auto& a : p->atoms()) {
      if (a->kind == AtomKind::Var) continue;
      for (const auto& arg : a->args) n += node_count(arg);
    }
  }
  return n;
}

}  // namespace streamforge
