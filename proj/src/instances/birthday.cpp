// Copyright 2026 The permtest Authors.
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

#include "permtest/instances/birthday.hpp"

#include <vector>

#include "permtest/core/rng.hpp"
#include "permtest/core/sampling.hpp"
#include "permtest/error.hpp"

namespace permtest {
namespace {

// Counts are reset by revisiting the touched blocks, so each rep costs
// O(m) rather than O(blocks).
template <typename Draw>
double simulate(std::size_t blocks, std::uint64_t m, std::size_t order,
                std::uint64_t seed, std::size_t reps, Draw draw) {
  if (reps < 1) throw ParameterError("birthday_load needs reps >= 1");
  if (m <= order) return 0.0;
  std::vector<std::uint32_t> load(blocks, 0);
  std::vector<std::size_t> touched;
  touched.reserve(m);
  std::size_t hits = 0;
  for (std::size_t rep = 0; rep < reps; ++rep) {
    Rng rng(derive_seed(seed, rep));
    bool overloaded = false;
    for (std::uint64_t i = 0; i < m && !overloaded; ++i) {
      const std::size_t b = draw(rng);
      if (load[b]++ == 0) touched.push_back(b);
      overloaded = load[b] > order;
    }
    if (overloaded) ++hits;
    for (auto b : touched) load[b] = 0;
    touched.clear();
  }
  return static_cast<double>(hits) / static_cast<double>(reps);
}

}  // namespace

double birthday_load(std::size_t blocks, std::uint64_t m_samples,
                     std::size_t order, std::uint64_t seed, std::size_t reps) {
  if (blocks < 1) throw ParameterError("birthday_load needs blocks >= 1");
  return simulate(blocks, m_samples, order, seed, reps,
                  [blocks](Rng& rng) { return static_cast<std::size_t>(rng.below(blocks)); });
}

double birthday_load(std::span<const double> weights, std::uint64_t m_samples,
                     std::size_t order, std::uint64_t seed, std::size_t reps) {
  if (weights.empty()) throw ParameterError("birthday_load needs blocks >= 1");
  const AliasTable table(weights);
  return simulate(weights.size(), m_samples, order, seed, reps,
                  [&table](Rng& rng) { return static_cast<std::size_t>(table(rng)); });
}

}  // namespace permtest
