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


#include "streamforge/sampling.hpp"

namespace streamforge {

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  // splitmix64 over the combined value
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Rational sample_value(Rng& rng, const ValueGrid& grid) {
  std::uniform_int_distribution<long> dist(grid.lo, grid.hi);
  Rational q(dist(rng), grid.denominator);
  q.canonicalize();
  return q;
}

List sample_list_of_length(Rng& rng, std::size_t len, const ValueGrid& grid) {
  List out;
  out.reserve(len);
  for (std::size_t i = 0; i < len; ++i) out.push_back(sample_value(rng, grid));
  return out;
}

List sample_list(Rng& rng, std::size_t min_len, std::size_t max_len, const ValueGrid& grid) {
  std::uniform_int_distribution<std::size_t> len(min_len, max_len);
  return sample_list_of_length(rng, len(rng), grid);
}

std::vector<Rational> sample_values(Rng& rng, std::size_t count, const ValueGrid& grid) {
  return sample_list_of_length(rng, count, grid);
}

}  // namespace streamforge
