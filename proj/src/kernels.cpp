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


#include "streamforge/kernels.hpp"

#include <omp.h>

#include <exception>
#include <stdexcept>

namespace streamforge::kernels {

namespace {

bool use_parallel(Backend backend, std::size_t n) {
  return backend == Backend::OpenMP && n >= kParallelThreshold && !omp_in_parallel();
}

void check_rows(std::size_t a, std::size_t b) {
  if (a != b) throw std::invalid_argument("column length mismatch");
}

template <typename Out, typename F>
Out elementwise(std::size_t n, Backend backend, F f) {
  Out out(n);
  const auto rows = static_cast<std::ptrdiff_t>(n);
  if (use_parallel(backend, n)) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < rows; ++i) out[i] = f(static_cast<std::size_t>(i));
  } else {
    for (std::ptrdiff_t i = 0; i < rows; ++i) out[i] = f(static_cast<std::size_t>(i));
  }
  return out;
}

std::size_t bits(const mpz_class& z) { return mpz_sizeinbase(z.get_mpz_t(), 2); }

}  // namespace

int max_threads() { return omp_get_max_threads(); }

void parallel_for(std::size_t n, Backend backend, const std::function<void(std::size_t)>& fn) {
  const auto rows = static_cast<std::ptrdiff_t>(n);
  if (!use_parallel(backend, n)) {
    for (std::ptrdiff_t i = 0; i < rows; ++i) fn(static_cast<std::size_t>(i));
    return;
  }
  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic, 8)
  for (std::ptrdiff_t i = 0; i < rows; ++i) {
    try {
      fn(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(streamforge_parallel_for_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
}

Column binary(Builtin op, const Column& a, const Column& b, Backend backend) {
  check_rows(a.size(), b.size());
  switch (op) {
    case Builtin::Add:
      return elementwise<Column>(a.size(), backend, [&](std::size_t i) { return Rational(a[i] + b[i]); });
    case Builtin::Sub:
      return elementwise<Column>(a.size(), backend, [&](std::size_t i) { return Rational(a[i] - b[i]); });
    case Builtin::Mul:
      return elementwise<Column>(a.size(), backend, [&](std::size_t i) { return Rational(a[i] * b[i]); });
    case Builtin::Div:
      return elementwise<Column>(a.size(), backend, [&](std::size_t i) { return safe_div(a[i], b[i]); });
    case Builtin::Min:
      return elementwise<Column>(a.size(), backend, [&](std::size_t i) { return a[i] < b[i] ? a[i] : b[i]; });
    case Builtin::Max:
      return elementwise<Column>(a.size(), backend, [&](std::size_t i) { return a[i] > b[i] ? a[i] : b[i]; });
    default:
      throw std::invalid_argument("not a binary numeric builtin");
  }
}

Column unary(Builtin op, const Column& a, Backend backend) {
  switch (op) {
    case Builtin::Neg:
      return elementwise<Column>(a.size(), backend, [&](std::size_t i) { return Rational(-a[i]); });
    case Builtin::Abs:
      return elementwise<Column>(a.size(), backend, [&](std::size_t i) { return Rational(abs(a[i])); });
    default:
      throw std::invalid_argument("not a unary numeric builtin");
  }
}

Column power(const Column& a, unsigned exponent, Backend backend) {
  return elementwise<Column>(a.size(), backend, [&](std::size_t i) { return pow(a[i], exponent); });
}

Mask compare(Builtin op, const Column& a, const Column& b, Backend backend) {
  check_rows(a.size(), b.size());
  auto f = [&](std::size_t i) -> std::uint8_t {
    switch (op) {
      case Builtin::Lt: return a[i] < b[i];
      case Builtin::Le: return a[i] <= b[i];
      case Builtin::Gt: return a[i] > b[i];
      case Builtin::Ge: return a[i] >= b[i];
      case Builtin::Eq: return a[i] == b[i];
      default: throw std::invalid_argument("not a comparison");
    }
  };
  return elementwise<Mask>(a.size(), backend, f);
}

Mask logic(Builtin op, const Mask& a, const Mask& b, Backend backend) {
  check_rows(a.size(), b.size());
  if (op == Builtin::And) {
    return elementwise<Mask>(a.size(), backend, [&](std::size_t i) -> std::uint8_t { return a[i] && b[i]; });
  }
  if (op == Builtin::Or) {
    return elementwise<Mask>(a.size(), backend, [&](std::size_t i) -> std::uint8_t { return a[i] || b[i]; });
  }
  throw std::invalid_argument("not a connective");
}

Mask negate(const Mask& a, Backend backend) {
  return elementwise<Mask>(a.size(), backend, [&](std::size_t i) -> std::uint8_t { return !a[i]; });
}

Column select(const Mask& cond, const Column& a, const Column& b, Backend backend) {
  check_rows(cond.size(), a.size());
  check_rows(a.size(), b.size());
  return elementwise<Column>(a.size(), backend, [&](std::size_t i) { return cond[i] ? a[i] : b[i]; });
}

std::size_t count_matches(const Column& a, const Column& b, Backend backend) {
  check_rows(a.size(), b.size());
  const auto rows = static_cast<std::ptrdiff_t>(a.size());
  std::size_t n = 0;
  if (use_parallel(backend, a.size())) {
#pragma omp parallel for reduction(+ : n) schedule(static)
    for (std::ptrdiff_t i = 0; i < rows; ++i) n += a[i] == b[i] ? 1 : 0;
  } else {
    for (std::ptrdiff_t i = 0; i < rows; ++i) n += a[i] == b[i] ? 1 : 0;
  }
  return n;
}

std::size_t hash_column(const Column& a) {
  std::size_t h = 1469598103934665603ULL;
  for (const auto& q : a) h = (h ^ hash_value(q)) * 1099511628211ULL;
  return h;
}

std::size_t hash_mask(const Mask& a) {
  std::size_t h = 1469598103934665603ULL;
  for (auto v : a) h = (h ^ v) * 1099511628211ULL;
  return h;
}

std::size_t max_bits(const Column& a) {
  std::size_t m = 0;
  for (const auto& q : a) m = std::max({m, bits(q.get_num()), bits(q.get_den())});
  return m;
}

Column linear_combination(const std::vector<Rational>& coeffs, const std::vector<const Column*>& terms,
                          std::size_t rows, Backend backend) {
  if (coeffs.size() != terms.size()) throw std::invalid_argument("coefficient count mismatch");
  return elementwise<Column>(rows, backend, [&](std::size_t i) {
    Rational s = 0;
    for (std::size_t k = 0; k < terms.size(); ++k) s += coeffs[k] * (*terms[k])[i];
    return s;
  });
}

}  // namespace streamforge::kernels
